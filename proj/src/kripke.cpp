#include "mvml/kripke.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mvml/error.hpp"

namespace mvml {

KripkeFrame::KripkeFrame(std::vector<std::string> worlds, std::vector<Edge> edges)
    : worlds_(std::move(worlds)), edges_(std::move(edges)) {
  if (worlds_.empty()) throw DomainError("a frame needs at least one world");
  std::set<std::string> names(worlds_.begin(), worlds_.end());
  if (names.size() != worlds_.size()) throw DomainError("duplicate world name");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  succ_.resize(worlds_.size());
  for (auto [a, b] : edges_) {
    if (a >= worlds_.size() || b >= worlds_.size()) throw DomainError("edge mentions an unknown world");
    succ_[a].push_back(b);
  }
}

KripkeFrame KripkeFrame::numbered(std::size_t n, std::vector<Edge> edges) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return KripkeFrame(std::move(names), std::move(edges));
}

KripkeFrame KripkeFrame::chain(std::size_t k) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  return numbered(k, std::move(edges));
}

bool KripkeFrame::has_edge(std::size_t a, std::size_t b) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

std::size_t KripkeFrame::index_of(const std::string& name) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it == worlds_.end()) throw DomainError("unknown world '" + name + "'");
  return static_cast<std::size_t>(it - worlds_.begin());
}

KripkeModel::KripkeModel(KripkeFrame frame, Algebra algebra, std::vector<std::string> variables,
                         std::vector<std::vector<Value>> values)
    : frame_(std::move(frame)), algebra_(std::move(algebra)) {
  if (values.size() != frame_.size()) throw DomainError("valuation must list every world");
  std::vector<std::size_t> order(variables.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return variables[a] < variables[b]; });
  for (auto i : order) {
    if (!is_identifier(variables[i])) throw DomainError("invalid variable name '" + variables[i] + "'");
    if (!vars_.empty() && vars_.back() == variables[i])
      throw DomainError("variable '" + variables[i] + "' declared twice");
    vars_.push_back(variables[i]);
  }
  values_.resize(values.size());
  for (std::size_t w = 0; w < values.size(); ++w) {
    if (values[w].size() != variables.size())
      throw DomainError("valuation at world '" + frame_.name(w) + "' is not total");
    for (auto i : order) {
      algebra_.check(values[w][i]);
      values_[w].push_back(values[w][i]);
    }
  }
}

KripkeModel KripkeModel::from_columns(KripkeFrame frame, Algebra algebra,
                                      const std::map<std::string, std::vector<Value>>& by_var) {
  std::vector<std::string> vars;
  std::vector<std::vector<Value>> values(frame.size());
  for (const auto& [name, col] : by_var) {
    if (col.size() != frame.size()) throw DomainError("column for '" + name + "' has the wrong length");
    vars.push_back(name);
    for (std::size_t w = 0; w < col.size(); ++w) values[w].push_back(col[w]);
  }
  return KripkeModel(std::move(frame), std::move(algebra), std::move(vars), std::move(values));
}

bool KripkeModel::declares(const std::string& var) const {
  return std::binary_search(vars_.begin(), vars_.end(), var);
}

std::size_t KripkeModel::column_index(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) throw DomainError("undeclared variable '" + var + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

const Value& KripkeModel::value(std::size_t w, const std::string& var) const {
  return values_.at(w)[column_index(var)];
}

std::vector<Value> KripkeModel::column(const std::string& var) const {
  std::size_t k = column_index(var);
  std::vector<Value> out;
  for (const auto& row : values_) out.push_back(row[k]);
  return out;
}

KripkeModel KripkeModel::with_variable(const std::string& var, const std::vector<Value>& column) const {
  std::map<std::string, std::vector<Value>> cols;
  for (const auto& v : vars_) cols[v] = this->column(v);
  cols[var] = column;
  return from_columns(frame_, algebra_, cols);
}

KripkeModel KripkeModel::restrict_to(const std::vector<std::size_t>& worlds) const {
  std::vector<std::size_t> pos(size(), size());
  std::vector<std::string> names;
  std::vector<std::vector<Value>> values;
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (worlds[i] >= size()) throw DomainError("unknown world index");
    pos[worlds[i]] = i;
    names.push_back(frame_.name(worlds[i]));
    values.push_back(values_[worlds[i]]);
  }
  std::vector<Edge> edges;
  for (auto [a, b] : frame_.edges())
    if (pos[a] < size() && pos[b] < size()) edges.emplace_back(pos[a], pos[b]);
  return KripkeModel(KripkeFrame(std::move(names), std::move(edges)), algebra_, vars_, std::move(values));
}

KripkeModel KripkeModel::with_frame(KripkeFrame frame) const {
  if (frame.size() != size()) throw DomainError("frame size mismatch");
  return KripkeModel(std::move(frame), algebra_, vars_, values_);
}

const std::vector<Value>& Evaluator::values(const Formula& root) {
  if (auto it = memo_.find(root.id()); it != memo_.end()) return it->second.vals;
  const Algebra& alg = m_.algebra();
  const KripkeFrame& fr = m_.frame();
  const std::size_t n = m_.size();

  // Iterative post-order so that long product chains do not exhaust the stack.
  std::vector<std::pair<Formula, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    stack.pop_back();
    if (memo_.count(f.id())) continue;
    if (!expanded) {
      stack.emplace_back(f, true);
      if (is_binary(f.op())) {
        stack.emplace_back(f.rhs(), false);
        stack.emplace_back(f.lhs(), false);
      } else if (is_modal(f.op())) {
        stack.emplace_back(f.body(), false);
      }
      continue;
    }
    std::vector<Value> out;
    out.reserve(n);
    switch (f.op()) {
      case Op::Zero:
        out.assign(n, alg.zero());
        break;
      case Op::One:
        out.assign(n, alg.one());
        break;
      case Op::Var:
        if (!m_.declares(f.name())) throw DomainError("undeclared variable '" + f.name() + "'");
        out = m_.column(f.name());
        break;
      case Op::Box:
      case Op::Diamond: {
        const auto& body = memo_.at(f.body().id()).vals;
        const bool box = f.op() == Op::Box;
        for (std::size_t w = 0; w < n; ++w) {
          Value acc = box ? alg.one() : alg.zero();
          for (auto s : fr.successors(w)) acc = box ? alg.meet(acc, body[s]) : alg.join(acc, body[s]);
          out.push_back(std::move(acc));
        }
        break;
      }
      default: {
        const auto& l = memo_.at(f.lhs().id()).vals;
        const auto& r = memo_.at(f.rhs().id()).vals;
        Conn c = f.op() == Op::And     ? Conn::Meet
                 : f.op() == Op::Or    ? Conn::Join
                 : f.op() == Op::Times ? Conn::Times
                                       : Conn::Implies;
        for (std::size_t w = 0; w < n; ++w) out.push_back(alg.apply(c, l[w], r[w]));
        break;
      }
    }
    memo_.emplace(f.id(), Entry{f, std::move(out)});
  }
  return memo_.at(root.id()).vals;
}

Value evaluate(const KripkeModel& m, std::size_t w, const Formula& f) {
  if (w >= m.size()) throw DomainError("unknown world index " + std::to_string(w));
  Evaluator ev(m);
  return ev.value(w, f);
}

Verdict globally_satisfies(const KripkeModel& m, const FormulaSet& gamma) {
  Evaluator ev(m);
  const Value one = m.algebra().one();
  for (std::size_t w = 0; w < m.size(); ++w) {
    for (const auto& g : gamma) {
      const Value& v = ev.values(g)[w];
      if (!(v == one)) return Verdict::no({m, w, g, v});
    }
  }
  return Verdict::yes();
}

Verdict consequence_witness(const KripkeModel& m, const FormulaSet& gamma, const Formula& phi) {
  if (!globally_satisfies(m, gamma).holds) return Verdict::yes();
  Evaluator ev(m);
  const Value one = m.algebra().one();
  const auto& vals = ev.values(phi);
  for (std::size_t w = 0; w < m.size(); ++w)
    if (!(vals[w] == one)) return Verdict::no({m, w, phi, vals[w]});
  return Verdict::yes();
}

std::vector<std::optional<std::size_t>> heights(const KripkeFrame& fr) {
  const std::size_t n = fr.size();
  std::vector<std::vector<std::size_t>> pred(n);
  std::vector<std::size_t> outdeg(n);
  for (auto [a, b] : fr.edges()) {
    pred[b].push_back(a);
    ++outdeg[a];
  }
  std::vector<std::optional<std::size_t>> h(n);
  std::deque<std::size_t> ready;
  for (std::size_t w = 0; w < n; ++w)
    if (outdeg[w] == 0) {
      ready.push_back(w);
      h[w] = 0;
    }
  // A world is finished once all its successors are; its height is then final.
  std::vector<std::size_t> best(n, 0);
  while (!ready.empty()) {
    std::size_t w = ready.front();
    ready.pop_front();
    for (auto p : pred[w]) {
      best[p] = std::max(best[p], *h[w] + 1);
      if (--outdeg[p] == 0) {
        h[p] = best[p];
        ready.push_back(p);
      }
    }
  }
  return h;
}

std::optional<std::size_t> height(const KripkeFrame& fr, std::size_t w) {
  if (w >= fr.size()) throw DomainError("unknown world index " + std::to_string(w));
  return heights(fr)[w];
}

KripkeModel unravel(const KripkeModel& m, std::size_t root, std::size_t depth) {
  if (root >= m.size()) throw DomainError("unknown world index " + std::to_string(root));
  const KripkeFrame& fr = m.frame();
  std::vector<std::size_t> source{root};
  std::vector<std::string> names{fr.name(root)};
  std::vector<Edge> edges;
  std::vector<std::size_t> level{0};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<std::size_t> next;
    for (auto node : level) {
      for (auto s : fr.successors(source[node])) {
        std::size_t id = source.size();
        source.push_back(s);
        names.push_back(names[node] + ">" + fr.name(s));
        edges.emplace_back(node, id);
        next.push_back(id);
      }
    }
    level = std::move(next);
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!seen.insert(names[i]).second) names[i] += "#" + std::to_string(i);
  std::vector<std::vector<Value>> values;
  for (auto s : source) {
    std::vector<Value> row;
    for (const auto& v : m.variables()) row.push_back(m.value(s, v));
    values.push_back(std::move(row));
  }
  return KripkeModel(KripkeFrame(std::move(names), std::move(edges)), m.algebra(), m.variables(),
                     std::move(values));
}

KripkeModel extract_chain(const KripkeModel& m, std::size_t root) {
  if (root >= m.size()) throw DomainError("unknown world index " + std::to_string(root));
  if (!height(m.frame(), root)) throw DomainError("root has infinite height");
  std::vector<std::size_t> path{root};
  while (!m.frame().successors(path.back()).empty()) path.push_back(m.frame().successors(path.back()).front());
  KripkeModel sub = m.restrict_to(path);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.emplace_back(i, i + 1);
  return sub.with_frame(KripkeFrame(sub.frame().worlds(), std::move(edges)));
}

KripkeModel generated_submodel(const KripkeModel& m, std::size_t w) {
  if (w >= m.size()) throw DomainError("unknown world index " + std::to_string(w));
  std::vector<bool> seen(m.size(), false);
  std::vector<std::size_t> todo{w};
  seen[w] = true;
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    for (auto s : m.frame().successors(v))
      if (!seen[s]) {
        seen[s] = true;
        todo.push_back(s);
      }
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < m.size(); ++v)
    if (seen[v]) keep.push_back(v);
  return m.restrict_to(keep);
}

bool is_transitive(const KripkeFrame& fr) {
  for (auto [a, b] : fr.edges())
    for (auto c : fr.successors(b))
      if (!fr.has_edge(a, c)) return false;
  return true;
}

std::optional<std::vector<std::size_t>> chain_order(const KripkeFrame& fr) {
  const std::size_t n = fr.size();
  std::vector<std::size_t> indeg(n, 0);
  for (auto [a, b] : fr.edges()) ++indeg[b];
  std::optional<std::size_t> top;
  for (std::size_t w = 0; w < n; ++w) {
    if (fr.successors(w).size() > 1 || indeg[w] > 1) return std::nullopt;
    if (indeg[w] == 0) {
      if (top) return std::nullopt;
      top = w;
    }
  }
  if (!top) return std::nullopt;
  std::vector<std::size_t> order{*top};
  while (!fr.successors(order.back()).empty()) {
    order.push_back(fr.successors(order.back()).front());
    if (order.size() > n) return std::nullopt;
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

}  // namespace mvml
