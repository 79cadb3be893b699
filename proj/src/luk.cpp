#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "mvml/decision.hpp"
#include "mvml/error.hpp"
#include "mvml/lp.hpp"

namespace mvml {

namespace {

// c . x + k, over the propositional variables.
struct Affine {
  std::vector<Rational> c;
  Rational k;

  bool is_constant() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }
  friend bool operator==(const Affine& a, const Affine& b) { return a.k == b.k && a.c == b.c; }
};

Affine constant(std::size_t nv, long k) { return {std::vector<Rational>(nv), Rational(k)}; }

Affine combine(const Affine& a, long sa, const Affine& b, long sb, long k) {
  Affine out{std::vector<Rational>(a.c.size()), a.k * sa + b.k * sb + k};
  for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i] * sa + b.c[i] * sb;
  return out;
}

// expr (sense) 0
struct Row {
  Affine expr;
  lp::Sense sense;
};

bool holds_constant(const Row& r) {
  switch (r.sense) {
    case lp::Sense::Le:
      return r.expr.k <= 0;
    case lp::Sense::Ge:
      return r.expr.k >= 0;
    case lp::Sense::Eq:
      return r.expr.k == 0;
  }
  return false;
}

struct Node {
  Op op;
  int lhs = -1;
  int rhs = -1;
  int var = -1;
};

class LukSearch {
 public:
  LukSearch(const FormulaSet& gamma, const Formula& phi, const LukOptions& opts) : opts_(opts) {
    for (const auto& v : variables(gamma)) vars_.push_back(v);
    for (const auto& v : variables(phi))
      if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) vars_.push_back(v);
    std::sort(vars_.begin(), vars_.end());
    for (const auto& g : gamma) premise_roots_.push_back(compile(g));
    goal_ = compile(phi);
    forced_.assign(nodes_.size(), false);
    notone_.assign(nodes_.size(), false);
    for (int r : premise_roots_) forced_[r] = true;
    notone_[goal_] = true;
    for (int i = static_cast<int>(nodes_.size()) - 1; i >= 0; --i) {
      const Node& n = nodes_[i];
      if (forced_[i] && (n.op == Op::And || n.op == Op::Times)) {
        forced_[n.lhs] = true;
        forced_[n.rhs] = true;
      }
      if (notone_[i] && n.op == Op::Implies) notone_[n.rhs] = true;
      if (notone_[i] && n.op == Op::Or) {
        notone_[n.lhs] = true;
        notone_[n.rhs] = true;
      }
    }
  }

  std::optional<std::vector<Rational>> run() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (forced_[i] && notone_[i]) return std::nullopt;
      if (notone_[i] && nodes_[i].op == Op::One) return std::nullopt;
      if (forced_[i] && nodes_[i].op == Op::Zero) return std::nullopt;
    }
    values_.resize(nodes_.size());
    std::vector<Row> rows;
    if (dfs(0, rows)) return solution_;
    return std::nullopt;
  }

  const std::vector<std::string>& vars() const { return vars_; }

 private:
  int compile(const Formula& root) {
    std::vector<std::pair<Formula, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [f, expanded] = stack.back();
      stack.pop_back();
      if (index_.count(f)) continue;
      if (is_modal(f.op())) throw DomainError("modal operator in a propositional decision: " + render(f));
      if (!expanded && is_binary(f.op())) {
        stack.emplace_back(f, true);
        stack.emplace_back(f.rhs(), false);
        stack.emplace_back(f.lhs(), false);
        continue;
      }
      Node n{f.op()};
      if (f.op() == Op::Var)
        n.var = static_cast<int>(std::lower_bound(vars_.begin(), vars_.end(), f.name()) - vars_.begin());
      if (is_binary(f.op())) {
        n.lhs = index_.at(f.lhs());
        n.rhs = index_.at(f.rhs());
      }
      index_.emplace(f, static_cast<int>(nodes_.size()));
      nodes_.push_back(n);
    }
    return index_.at(root);
  }

  lp::Program program(const std::vector<Row>& rows) const {
    const std::size_t nv = vars_.size();
    lp::Program p;
    p.num_vars = nv;
    p.objective.assign(nv, Rational(0));
    for (std::size_t i = 0; i < nv; ++i) {
      lp::Constraint c{std::vector<Rational>(nv), lp::Sense::Le, Rational(1)};
      c.coeffs[i] = 1;
      p.constraints.push_back(std::move(c));
    }
    for (const auto& r : rows) p.constraints.push_back({r.expr.c, r.sense, -r.expr.k});
    return p;
  }

  bool feasible(const std::vector<Row>& rows) const {
    return lp::maximize(program(rows)).status == lp::Status::Optimal;
  }

  // Regime r of node i: its value and the side conditions, given the children's values.
  void regime(std::size_t i, int r, Affine& value, std::vector<Row>& side) const {
    const Node& n = nodes_[i];
    const Affine& l = values_[n.lhs];
    const Affine& rr = values_[n.rhs];
    const std::size_t nv = vars_.size();
    switch (n.op) {
      case Op::And:
        value = r == 0 ? l : rr;
        side.push_back({r == 0 ? combine(l, 1, rr, -1, 0) : combine(rr, 1, l, -1, 0), lp::Sense::Le});
        break;
      case Op::Or:
        value = r == 0 ? l : rr;
        side.push_back({r == 0 ? combine(rr, 1, l, -1, 0) : combine(l, 1, rr, -1, 0), lp::Sense::Le});
        break;
      case Op::Times:
        if (r == 0) {
          value = constant(nv, 0);
          side.push_back({combine(l, 1, rr, 1, -1), lp::Sense::Le});
        } else {
          value = combine(l, 1, rr, 1, -1);
          side.push_back({value, lp::Sense::Ge});
        }
        break;
      default:
        if (r == 0) {
          value = constant(nv, 1);
          side.push_back({combine(l, 1, rr, -1, 0), lp::Sense::Le});
        } else {
          value = combine(l, -1, rr, 1, 1);
          side.push_back({combine(l, 1, rr, -1, 0), lp::Sense::Ge});
        }
        break;
    }
    if (forced_[i]) side.push_back({combine(value, 1, constant(nv, 0), 0, -1), lp::Sense::Eq});
  }

  std::vector<int> candidates(std::size_t i) const {
    const Node& n = nodes_[i];
    std::vector<int> out;
    for (int r : {0, 1}) {
      if (opts_.disabled_op && *opts_.disabled_op == n.op && opts_.disabled_regime == r) continue;
      if (forced_[i] && n.op == Op::Times && r == 0) continue;
      if (forced_[i] && (n.op == Op::Implies || n.op == Op::And) && r == 1) continue;
      if (notone_[i] && n.op == Op::Implies && r == 0) continue;
      out.push_back(r);
    }
    bool lattice_like = n.op == Op::And || n.op == Op::Or || n.op == Op::Implies;
    if (out.size() == 2 && lattice_like && values_[n.lhs] == values_[n.rhs]) out.pop_back();
    return out;
  }

  bool dfs(std::size_t i, std::vector<Row>& rows) {
    const std::size_t nv = vars_.size();
    while (i < nodes_.size() && !is_binary(nodes_[i].op)) {
      const Node& n = nodes_[i];
      if (n.op == Op::Var) {
        Affine a = constant(nv, 0);
        a.c[n.var] = 1;
        values_[i] = a;
        if (forced_[i]) rows.push_back({combine(a, 1, a, 0, -1), lp::Sense::Eq});
      } else {
        values_[i] = constant(nv, n.op == Op::One ? 1 : 0);
      }
      ++i;
    }
    if (i == nodes_.size()) return leaf(rows);

    struct Option {
      Affine value;
      std::vector<Row> side;
    };
    std::vector<Option> options;
    for (int r : candidates(i)) {
      Option o;
      std::vector<Row> side;
      regime(i, r, o.value, side);
      bool ok = true;
      for (auto& s : side) {
        if (s.expr.is_constant()) {
          ok = ok && holds_constant(s);
        } else {
          o.side.push_back(std::move(s));
        }
      }
      if (ok) options.push_back(std::move(o));
    }
    if (options.size() == 2) {
      std::vector<Option> live;
      for (auto& o : options) {
        std::vector<Row> trial = rows;
        trial.insert(trial.end(), o.side.begin(), o.side.end());
        if (o.side.empty() || feasible(trial)) live.push_back(std::move(o));
      }
      options = std::move(live);
      if (options.size() == 2 && ++branches_ > opts_.max_branches)
        throw ResourceLimit("branch limit of " + std::to_string(opts_.max_branches) + " exceeded");
    }
    for (auto& o : options) {
      std::size_t mark = rows.size();
      rows.insert(rows.end(), o.side.begin(), o.side.end());
      values_[i] = o.value;
      if (dfs(i + 1, rows)) return true;
      rows.resize(mark);
    }
    return false;
  }

  bool leaf(const std::vector<Row>& rows) {
    lp::Program p = program(rows);
    for (std::size_t j = 0; j < vars_.size(); ++j) p.objective[j] = -values_[goal_].c[j];
    lp::Result res = lp::maximize(p);
    if (res.status != lp::Status::Optimal) return false;
    Rational min_goal = -res.value + values_[goal_].k;
    if (min_goal >= 1) return false;
    solution_ = res.x;
    return true;
  }

  LukOptions opts_;
  std::vector<std::string> vars_;
  std::vector<Node> nodes_;
  std::unordered_map<Formula, int, FormulaHash> index_;
  std::vector<int> premise_roots_;
  int goal_ = 0;
  std::vector<bool> forced_, notone_;
  std::vector<Affine> values_;
  std::vector<Rational> solution_;
  std::uint64_t branches_ = 0;
};

}  // namespace

Verdict luk_consequence(const FormulaSet& gamma, const Formula& phi, const LukOptions& opts) {
  LukSearch search(gamma, phi, opts);
  auto sol = search.run();
  if (!sol) return Verdict::yes();
  std::vector<std::vector<Value>> row(1);
  for (const auto& x : *sol) row[0].emplace_back(x);
  KripkeModel m(KripkeFrame::numbered(1, {}), Algebra::std_mv(), search.vars(), std::move(row));
  Evaluator ev(m);
  for (const auto& g : gamma)
    if (!(ev.value(0, g) == Value(Rational(1))))
      throw std::logic_error("countermodel violates premise " + render(g));
  Value v = ev.value(0, phi);
  if (!(v.rat() < 1)) throw std::logic_error("countermodel does not refute " + render(phi));
  return Verdict::no({m, 0, phi, v});
}

}  // namespace mvml
