#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "mvml/decision.hpp"
#include "mvml/error.hpp"

namespace mvml {

namespace {

struct Node {
  Op op;
  int lhs = -1;
  int rhs = -1;
  int var = -1;
};

class FiniteSearch {
 public:
  FiniteSearch(const Algebra& alg, const FormulaSet& gamma, const Formula& phi, const FiniteOptions& opts)
      : tables_(alg.kind() == AlgebraKind::MVn ? mv_tables(alg.n()) : alg.tables()) {
    std::set<std::string> all = variables(gamma);
    for (const auto& v : variables(phi)) all.insert(v);
    for (const auto& v : opts.order)
      if (all.count(v) && std::find(order_.begin(), order_.end(), v) == order_.end()) order_.push_back(v);
    for (const auto& v : all)
      if (std::find(order_.begin(), order_.end(), v) == order_.end()) order_.push_back(v);

    long double total = 1;
    for (std::size_t i = 0; i < order_.size(); ++i) total *= static_cast<long double>(tables_.size);
    if (total > static_cast<long double>(opts.max_valuations))
      throw ResourceLimit("search space of " + std::to_string(tables_.size) + "^" +
                          std::to_string(order_.size()) + " valuations exceeds the limit");

    checks_.resize(order_.size() + 1);
    for (const auto& g : gamma) {
      auto [nodes, last] = compile(g);
      checks_[last].push_back(std::move(nodes));
    }
    goal_ = compile(phi).first;
    assignment_.assign(order_.size(), 0);
    vals_.assign(nodes_.size(), 0);
  }

  std::optional<std::vector<std::size_t>> run() {
    if (search(0)) return assignment_;
    return std::nullopt;
  }

  const std::vector<std::string>& order() const { return order_; }

 private:
  // Post-order node list of f, and the 1-based position of its last variable in the order (0 if none).
  std::pair<std::vector<int>, std::size_t> compile(const Formula& root) {
    std::vector<int> list;
    std::unordered_map<const void*, bool> local;
    std::size_t last = 0;
    std::vector<std::pair<Formula, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [f, expanded] = stack.back();
      stack.pop_back();
      if (local.count(f.id())) continue;
      if (is_modal(f.op())) throw DomainError("modal operator in a propositional decision: " + render(f));
      if (!expanded && is_binary(f.op())) {
        stack.emplace_back(f, true);
        stack.emplace_back(f.rhs(), false);
        stack.emplace_back(f.lhs(), false);
        continue;
      }
      local[f.id()] = true;
      auto it = index_.find(f);
      int idx;
      if (it != index_.end()) {
        idx = it->second;
      } else {
        Node n{f.op()};
        if (f.op() == Op::Var) n.var = static_cast<int>(std::find(order_.begin(), order_.end(), f.name()) - order_.begin());
        if (is_binary(f.op())) {
          n.lhs = index_.at(f.lhs());
          n.rhs = index_.at(f.rhs());
        }
        idx = static_cast<int>(nodes_.size());
        index_.emplace(f, idx);
        nodes_.push_back(n);
      }
      if (nodes_[idx].op == Op::Var) last = std::max(last, static_cast<std::size_t>(nodes_[idx].var) + 1);
      list.push_back(idx);
    }
    return {list, last};
  }

  std::size_t eval(const std::vector<int>& list) {
    for (int i : list) {
      const Node& n = nodes_[i];
      switch (n.op) {
        case Op::Zero:
          vals_[i] = tables_.zero;
          break;
        case Op::One:
          vals_[i] = tables_.one;
          break;
        case Op::Var:
          vals_[i] = assignment_[n.var];
          break;
        case Op::And:
          vals_[i] = tables_.meet[vals_[n.lhs]][vals_[n.rhs]];
          break;
        case Op::Or:
          vals_[i] = tables_.join[vals_[n.lhs]][vals_[n.rhs]];
          break;
        case Op::Times:
          vals_[i] = tables_.times[vals_[n.lhs]][vals_[n.rhs]];
          break;
        default:
          vals_[i] = tables_.residuum[vals_[n.lhs]][vals_[n.rhs]];
          break;
      }
    }
    return vals_[list.back()];
  }

  bool premises_hold(std::size_t level) {
    for (const auto& list : checks_[level])
      if (eval(list) != tables_.one) return false;
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == 0 && !premises_hold(0)) return false;
    if (depth == order_.size()) return eval(goal_) != tables_.one;
    for (std::size_t a = 0; a < tables_.size; ++a) {
      assignment_[depth] = a;
      if (premises_hold(depth + 1) && search(depth + 1)) return true;
    }
    return false;
  }

  FiniteTables tables_;
  std::vector<std::string> order_;
  std::vector<Node> nodes_;
  std::unordered_map<Formula, int, FormulaHash> index_;
  std::vector<std::vector<std::vector<int>>> checks_;
  std::vector<int> goal_;
  std::vector<std::size_t> assignment_;
  std::vector<std::size_t> vals_;
};

}  // namespace

Verdict finite_consequence(const Algebra& alg, const FormulaSet& gamma, const Formula& phi,
                           const FiniteOptions& opts) {
  if (!alg.is_finite()) throw DomainError("finite_consequence needs mv-n or a finite table algebra");
  FiniteSearch search(alg, gamma, phi, opts);
  auto sol = search.run();
  if (!sol) return Verdict::yes();
  std::vector<Value> carrier = alg.elements();
  std::vector<std::vector<Value>> row(1);
  for (auto i : *sol) row[0].push_back(carrier[i]);
  KripkeModel m(KripkeFrame::numbered(1, {}), alg, search.order(), std::move(row));
  Evaluator ev(m);
  for (const auto& g : gamma)
    if (!alg.is_one(ev.value(0, g))) throw std::logic_error("countermodel violates premise " + render(g));
  Value v = ev.value(0, phi);
  if (alg.is_one(v)) throw std::logic_error("countermodel does not refute " + render(phi));
  return Verdict::no({m, 0, phi, v});
}

}  // namespace mvml
