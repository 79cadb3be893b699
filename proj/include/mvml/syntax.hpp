#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mvml {

/// Node kinds of the canonical modal formula AST. Negation, bi-implication and
/// powers are not node kinds: the parser and the factory helpers expand them.
enum class Op : unsigned char { Zero, One, Var, And, Or, Times, Implies, Box, Diamond };

bool is_binary(Op op) noexcept;
bool is_modal(Op op) noexcept;

/// Immutable, structurally compared modal formula. Copies share their nodes.
class Formula {
 public:
  /// The constant 0.
  Formula();

  static Formula zero();
  static Formula one();
  static Formula var(std::string name);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula times(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula box(Formula body);
  static Formula diamond(Formula body);

  // Sugar, expanded on construction.
  static Formula neg(Formula f);                    // f -> 0
  static Formula equiv(Formula lhs, Formula rhs);   // (lhs -> rhs) * (rhs -> lhs)
  static Formula power(const Formula& f, unsigned long long n);  // n-fold product, n >= 1
  static Formula box_power(Formula f, std::size_t i);             // [] applied i times

  Op op() const noexcept;
  /// Variable name; empty for every other kind.
  const std::string& name() const noexcept;
  /// Left operand of a binary node, or the body of a modal node.
  Formula lhs() const;
  Formula rhs() const;
  Formula body() const { return lhs(); }

  std::size_t node_count() const noexcept;
  std::size_t modal_depth() const noexcept;
  std::size_t hash() const noexcept;
  /// Identity of the shared node; stable for the lifetime of any copy.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, const Formula* lhs, const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Insertion-ordered set of formulas, deduplicated structurally.
class FormulaSet {
 public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> items);
  explicit FormulaSet(const std::vector<Formula>& items);

  /// Returns false if an equal formula was already present.
  bool insert(const Formula& f);
  void insert_all(const FormulaSet& other);
  bool contains(const Formula& f) const;

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Formula& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  const std::vector<Formula>& items() const noexcept { return items_; }

  friend bool operator==(const FormulaSet& a, const FormulaSet& b);

 private:
  std::vector<Formula> items_;
  std::set<Formula> index_;
};

/// Parses the concrete syntax documented in the README.
Formula parse(std::string_view text);
/// Parses a list of formulas separated by ';' (empty items are skipped).
FormulaSet parse_list(std::string_view text);

/// Fully parenthesized concrete syntax; `parse(render(f)) == f`.
std::string render(const Formula& f);

/// All subformulas, children before parents.
FormulaSet subformulas(const Formula& f);
FormulaSet subformulas(const FormulaSet& fs);
/// Subformulas reachable without crossing a modal operator.
FormulaSet prop_subformulas(const Formula& f);

std::set<std::string> variables(const Formula& f);
std::set<std::string> variables(const FormulaSet& fs);
bool is_propositional(const Formula& f);
bool is_identifier(std::string_view s);

using Substitution = std::map<std::string, Formula>;
Formula substitute(const Formula& f, const Substitution& sigma);

/// { []^i g : g in gamma, 0 <= i <= k }, ordered by i then by gamma.
FormulaSet box_prefix(const FormulaSet& gamma, std::size_t k);

/// A variable name not in `used`, built from `stem`.
std::string fresh_variable(const std::set<std::string>& used, std::string_view stem);

}  // namespace mvml

template <>
struct std::hash<mvml::Formula> {
  std::size_t operator()(const mvml::Formula& f) const noexcept { return f.hash(); }
};
