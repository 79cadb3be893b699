#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mvml/algebra.hpp"
#include "mvml/syntax.hpp"

namespace mvml {

using Edge = std::pair<std::size_t, std::size_t>;

/// Finite classical frame. Worlds are identified by their declaration index;
/// names are labels for I/O and must be unique.
class KripkeFrame {
 public:
  KripkeFrame(std::vector<std::string> worlds, std::vector<Edge> edges);
  /// Worlds "0".."n-1".
  static KripkeFrame numbered(std::size_t n, std::vector<Edge> edges);
  /// Worlds "0".."k-1" with edges i -> i+1.
  static KripkeFrame chain(std::size_t k);

  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  const std::string& name(std::size_t w) const { return worlds_.at(w); }
  /// Sorted, duplicate free.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Successors in increasing index order.
  const std::vector<std::size_t>& successors(std::size_t w) const { return succ_.at(w); }
  bool has_edge(std::size_t a, std::size_t b) const;
  /// Throws DomainError for unknown names.
  std::size_t index_of(const std::string& name) const;

  friend bool operator==(const KripkeFrame& a, const KripkeFrame& b) {
    return a.worlds_ == b.worlds_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> worlds_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> succ_;
};

/// Frame plus algebra plus a total valuation on the declared variables.
class KripkeModel {
 public:
  /// values[w][k] is the value of variables[k] at world w.
  KripkeModel(KripkeFrame frame, Algebra algebra, std::vector<std::string> variables,
              std::vector<std::vector<Value>> values);
  /// Valuation given per variable: by_var[p][w].
  static KripkeModel from_columns(KripkeFrame frame, Algebra algebra,
                                  const std::map<std::string, std::vector<Value>>& by_var);

  const KripkeFrame& frame() const noexcept { return frame_; }
  const Algebra& algebra() const noexcept { return algebra_; }
  std::size_t size() const noexcept { return frame_.size(); }
  /// Sorted.
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  bool declares(const std::string& var) const;
  const Value& value(std::size_t w, const std::string& var) const;
  std::vector<Value> column(const std::string& var) const;

  /// Copy with `var` added or replaced.
  KripkeModel with_variable(const std::string& var, const std::vector<Value>& column) const;
  /// Copy keeping only the listed worlds (in the given order) and the edges among them.
  KripkeModel restrict_to(const std::vector<std::size_t>& worlds) const;
  /// Copy on a new frame with the same worlds.
  KripkeModel with_frame(KripkeFrame frame) const;

  friend bool operator==(const KripkeModel& a, const KripkeModel& b) {
    return a.frame_ == b.frame_ && a.algebra_ == b.algebra_ && a.vars_ == b.vars_ && a.values_ == b.values_;
  }

 private:
  std::size_t column_index(const std::string& var) const;

  KripkeFrame frame_;
  Algebra algebra_;
  std::vector<std::string> vars_;
  std::vector<std::vector<Value>> values_;
};

/// Memoizing evaluator: each distinct subformula node is evaluated once at every world.
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m) : m_(m) {}
  /// Values of f at all worlds, by world index.
  const std::vector<Value>& values(const Formula& f);
  Value value(std::size_t w, const Formula& f) { return values(f).at(w); }

 private:
  struct Entry {
    Formula keep_alive;
    std::vector<Value> vals;
  };
  const KripkeModel& m_;
  std::unordered_map<const void*, Entry> memo_;
};

/// Throws DomainError if f mentions an undeclared variable or w is out of range.
Value evaluate(const KripkeModel& m, std::size_t w, const Formula& f);

struct Witness {
  std::optional<KripkeModel> model;
  std::size_t world = 0;
  Formula formula;
  Value value;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  static Verdict yes() { return {}; }
  static Verdict no(Witness w) { return {false, std::move(w)}; }
};

/// Fails at the first (world, formula) pair, scanning worlds in index order.
Verdict globally_satisfies(const KripkeModel& m, const FormulaSet& gamma);
/// Fails iff m satisfies gamma globally and phi is below 1 at some world.
Verdict consequence_witness(const KripkeModel& m, const FormulaSet& gamma, const Formula& phi);

/// Longest outgoing path length; nullopt when a cycle is reachable.
std::optional<std::size_t> height(const KripkeFrame& fr, std::size_t w);
std::vector<std::optional<std::size_t>> heights(const KripkeFrame& fr);

/// Tree of paths from `root` of length at most `depth`. World names are the
/// path's world names joined with '>'.
KripkeModel unravel(const KripkeModel& m, std::size_t root, std::size_t depth);

/// Path root = v1 -> v2 -> ... to a successor-free world, always moving to the
/// least-index successor. Only the path edges are kept.
KripkeModel extract_chain(const KripkeModel& m, std::size_t root);

/// Worlds reachable from w (w included), in declaration order, with all edges among them.
KripkeModel generated_submodel(const KripkeModel& m, std::size_t w);

bool is_transitive(const KripkeFrame& fr);

/// If the frame is a single finite path, its worlds from the one without
/// predecessor down to the successor-free end.
std::optional<std::vector<std::size_t>> chain_order(const KripkeFrame& fr);

}  // namespace mvml
