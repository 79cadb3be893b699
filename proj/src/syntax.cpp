#include "mvml/syntax.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "mvml/error.hpp"

namespace mvml {

struct Formula::Node {
  Op op;
  std::string name;
  // mutable so that the destructor can detach children of uniquely owned nodes.
  mutable std::shared_ptr<const Node> lhs;
  mutable std::shared_ptr<const Node> rhs;
  std::size_t hash;
  std::size_t count;
  std::size_t depth;

  Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  // Iterative teardown: deep formulas would otherwise overflow the stack.
  ~Node() {
    std::vector<std::shared_ptr<const Node>> stack;
    if (lhs) stack.push_back(std::move(lhs));
    if (rhs) stack.push_back(std::move(rhs));
    while (!stack.empty()) {
      std::shared_ptr<const Node> n = std::move(stack.back());
      stack.pop_back();
      if (n.use_count() == 1) {
        if (n->lhs) stack.push_back(std::move(n->lhs));
        if (n->rhs) stack.push_back(std::move(n->rhs));
      }
    }
  }
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::string& empty_name() {
  static const std::string empty;
  return empty;
}

}  // namespace

bool is_binary(Op op) noexcept {
  return op == Op::And || op == Op::Or || op == Op::Times || op == Op::Implies;
}

bool is_modal(Op op) noexcept { return op == Op::Box || op == Op::Diamond; }

Formula Formula::make(Op op, std::string name, const Formula* lhs, const Formula* rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->hash = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(op));
  node->count = 1;
  node->depth = 0;
  if (lhs != nullptr) {
    node->lhs = lhs->node_;
    node->hash = mix(node->hash, lhs->node_->hash);
    node->count += lhs->node_->count;
    node->depth = lhs->node_->depth;
  }
  if (rhs != nullptr) {
    node->rhs = rhs->node_;
    node->hash = mix(node->hash, rhs->node_->hash);
    node->count += rhs->node_->count;
    node->depth = std::max(node->depth, rhs->node_->depth);
  }
  if (is_modal(op)) ++node->depth;
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula::Formula() : node_(zero().node_) {}

Formula Formula::zero() {
  static const Formula z = make(Op::Zero, {}, nullptr, nullptr);
  return z;
}

Formula Formula::one() {
  static const Formula o = make(Op::One, {}, nullptr, nullptr);
  return o;
}

Formula Formula::var(std::string name) {
  if (!is_identifier(name)) throw DomainError("invalid variable name '" + name + "'");
  return make(Op::Var, std::move(name), nullptr, nullptr);
}

Formula Formula::conj(Formula lhs, Formula rhs) { return make(Op::And, {}, &lhs, &rhs); }
Formula Formula::disj(Formula lhs, Formula rhs) { return make(Op::Or, {}, &lhs, &rhs); }
Formula Formula::times(Formula lhs, Formula rhs) { return make(Op::Times, {}, &lhs, &rhs); }
Formula Formula::implies(Formula lhs, Formula rhs) { return make(Op::Implies, {}, &lhs, &rhs); }
Formula Formula::box(Formula body) { return make(Op::Box, {}, &body, nullptr); }
Formula Formula::diamond(Formula body) { return make(Op::Diamond, {}, &body, nullptr); }

Formula Formula::neg(Formula f) { return implies(std::move(f), zero()); }

Formula Formula::equiv(Formula lhs, Formula rhs) {
  return times(implies(lhs, rhs), implies(rhs, lhs));
}

Formula Formula::power(const Formula& f, unsigned long long n) {
  if (n == 0) throw DomainError("power exponent must be at least 1");
  Formula acc = f;
  for (unsigned long long i = 1; i < n; ++i) acc = times(f, acc);
  return acc;
}

Formula Formula::box_power(Formula f, std::size_t i) {
  for (std::size_t k = 0; k < i; ++k) f = box(f);
  return f;
}

Op Formula::op() const noexcept { return node_->op; }

const std::string& Formula::name() const noexcept {
  return node_->op == Op::Var ? node_->name : empty_name();
}

Formula Formula::lhs() const {
  if (!node_->lhs) throw DomainError("formula has no operand");
  return Formula(node_->lhs);
}

Formula Formula::rhs() const {
  if (!node_->rhs) throw DomainError("formula has no right operand");
  return Formula(node_->rhs);
}

std::size_t Formula::node_count() const noexcept { return node_->count; }
std::size_t Formula::modal_depth() const noexcept { return node_->depth; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

namespace {

using NodePtr = const void*;

}  // namespace

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->count != b.node_->count) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  const Formula::Node* x = a.node_.get();
  const Formula::Node* y = b.node_.get();
  // Walk down left spines iteratively; recurse only into right children.
  while (x != y) {
    if (auto c = x->op <=> y->op; c != 0) return c;
    if (auto c = x->name <=> y->name; c != 0) return c;
    if (auto c = x->count <=> y->count; c != 0) return c;
    if (x->rhs && x->rhs != y->rhs) {
      if (auto c = Formula(x->rhs) <=> Formula(y->rhs); c != 0) return c;
    }
    if (!x->lhs) return std::strong_ordering::equal;
    x = x->lhs.get();
    y = y->lhs.get();
  }
  return std::strong_ordering::equal;
}

FormulaSet::FormulaSet(std::initializer_list<Formula> items) {
  for (const auto& f : items) insert(f);
}

FormulaSet::FormulaSet(const std::vector<Formula>& items) {
  for (const auto& f : items) insert(f);
}

bool FormulaSet::insert(const Formula& f) {
  if (!index_.insert(f).second) return false;
  items_.push_back(f);
  return true;
}

void FormulaSet::insert_all(const FormulaSet& other) {
  for (const auto& f : other) insert(f);
}

bool FormulaSet::contains(const Formula& f) const { return index_.count(f) != 0; }

bool operator==(const FormulaSet& a, const FormulaSet& b) { return a.index_ == b.index_; }

namespace {

void collect_subformulas(const Formula& f, FormulaSet& out, std::unordered_set<NodePtr>& seen) {
  if (!seen.insert(f.id()).second) return;
  if (is_binary(f.op())) {
    collect_subformulas(f.lhs(), out, seen);
    collect_subformulas(f.rhs(), out, seen);
  } else if (is_modal(f.op())) {
    collect_subformulas(f.body(), out, seen);
  }
  out.insert(f);
}

void collect_prop_subformulas(const Formula& f, FormulaSet& out,
                              std::unordered_set<NodePtr>& seen) {
  if (!seen.insert(f.id()).second) return;
  if (is_binary(f.op())) {
    collect_prop_subformulas(f.lhs(), out, seen);
    collect_prop_subformulas(f.rhs(), out, seen);
  }
  out.insert(f);
}

void collect_variables(const Formula& f, std::set<std::string>& out,
                       std::unordered_set<NodePtr>& seen) {
  if (!seen.insert(f.id()).second) return;
  switch (f.op()) {
    case Op::Var:
      out.insert(f.name());
      break;
    case Op::Zero:
    case Op::One:
      break;
    case Op::Box:
    case Op::Diamond:
      collect_variables(f.body(), out, seen);
      break;
    default:
      collect_variables(f.lhs(), out, seen);
      collect_variables(f.rhs(), out, seen);
  }
}

}  // namespace

FormulaSet subformulas(const Formula& f) {
  FormulaSet out;
  std::unordered_set<NodePtr> seen;
  collect_subformulas(f, out, seen);
  return out;
}

FormulaSet subformulas(const FormulaSet& fs) {
  FormulaSet out;
  std::unordered_set<NodePtr> seen;
  for (const auto& f : fs) collect_subformulas(f, out, seen);
  return out;
}

FormulaSet prop_subformulas(const Formula& f) {
  FormulaSet out;
  std::unordered_set<NodePtr> seen;
  collect_prop_subformulas(f, out, seen);
  return out;
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  std::unordered_set<NodePtr> seen;
  collect_variables(f, out, seen);
  return out;
}

std::set<std::string> variables(const FormulaSet& fs) {
  std::set<std::string> out;
  std::unordered_set<NodePtr> seen;
  for (const auto& f : fs) collect_variables(f, out, seen);
  return out;
}

bool is_propositional(const Formula& f) {
  for (const auto& g : subformulas(f)) {
    if (is_modal(g.op())) return false;
  }
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

namespace {

Formula substitute_memo(const Formula& f, const Substitution& sigma,
                        std::unordered_map<NodePtr, Formula>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  Formula out;
  switch (f.op()) {
    case Op::Zero:
    case Op::One:
      out = f;
      break;
    case Op::Var: {
      auto it = sigma.find(f.name());
      out = it == sigma.end() ? f : it->second;
      break;
    }
    case Op::Box:
      out = Formula::box(substitute_memo(f.body(), sigma, memo));
      break;
    case Op::Diamond:
      out = Formula::diamond(substitute_memo(f.body(), sigma, memo));
      break;
    case Op::And:
      out = Formula::conj(substitute_memo(f.lhs(), sigma, memo),
                          substitute_memo(f.rhs(), sigma, memo));
      break;
    case Op::Or:
      out = Formula::disj(substitute_memo(f.lhs(), sigma, memo),
                          substitute_memo(f.rhs(), sigma, memo));
      break;
    case Op::Times:
      out = Formula::times(substitute_memo(f.lhs(), sigma, memo),
                           substitute_memo(f.rhs(), sigma, memo));
      break;
    case Op::Implies:
      out = Formula::implies(substitute_memo(f.lhs(), sigma, memo),
                             substitute_memo(f.rhs(), sigma, memo));
      break;
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& sigma) {
  if (sigma.empty()) return f;
  std::unordered_map<NodePtr, Formula> memo;
  return substitute_memo(f, sigma, memo);
}

FormulaSet box_prefix(const FormulaSet& gamma, std::size_t k) {
  FormulaSet out;
  std::vector<Formula> layer = gamma.items();
  for (std::size_t i = 0; i <= k; ++i) {
    for (auto& g : layer) {
      out.insert(g);
      g = Formula::box(g);
    }
  }
  return out;
}

std::string fresh_variable(const std::set<std::string>& used, std::string_view stem) {
  std::string base(stem);
  if (!is_identifier(base)) base = "v";
  if (used.count(base) == 0) return base;
  for (std::size_t i = 0;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (used.count(candidate) == 0) return candidate;
  }
}

}  // namespace mvml
