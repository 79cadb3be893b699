#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvml/algebra.hpp"
#include "mvml/kripke.hpp"
#include "mvml/syntax.hpp"

namespace mvml {

struct LukOptions {
  /// Maximum number of nodes at which both regimes are explored.
  std::uint64_t max_branches = std::uint64_t{1} << 24;
  /// Test hook: never use regime `disabled_regime` of connective `disabled_op`.
  std::optional<Op> disabled_op;
  int disabled_regime = 0;
};

/// Consequence over the standard MV algebra, decided exactly. On failure the
/// witness is a one-world model (world "0") over std-mv on the variables of
/// gamma and phi.
Verdict luk_consequence(const FormulaSet& gamma, const Formula& phi, const LukOptions& opts = {});

struct FiniteOptions {
  /// Upper bound on |carrier|^|variables|.
  std::uint64_t max_valuations = 10'000'000;
  /// Variables to assign first, in this order; the rest follow alphabetically.
  std::vector<std::string> order;
};

/// Exhaustive consequence over MV_n or a finite table algebra. On failure the
/// witness is a one-world model over `alg`.
Verdict finite_consequence(const Algebra& alg, const FormulaSet& gamma, const Formula& phi,
                           const FiniteOptions& opts = {});

struct LegendEntry {
  std::size_t world = 0;
  /// The source variable, or the modal subformula the fresh variable stands for.
  Formula source;
};

struct FrameTranslation {
  std::vector<std::string> source_variables;
  /// <gamma, v>* for every premise and world, world-major.
  FormulaSet premises;
  /// Delta^v, one set per world.
  std::vector<FormulaSet> deltas;
  /// <phi, v>* per world.
  std::vector<Formula> conclusions;
  /// Conjunction of `conclusions`, left nested.
  Formula conclusion;
  std::map<std::string, LegendEntry> legend;

  /// Name of the fresh variable for a source variable or modal subformula at a world.
  const std::string& name_of(const Formula& source, std::size_t world) const;
  /// premises plus every delta.
  FormulaSet all_premises() const;

 private:
  friend FrameTranslation translate_on_frame(const KripkeFrame&, const FormulaSet&, const Formula&);
  std::map<std::pair<Formula, std::size_t>, std::string> names_;
};

FrameTranslation translate_on_frame(const KripkeFrame& fr, const FormulaSet& gamma, const Formula& phi);

struct DecideOptions {
  LukOptions luk;
  FiniteOptions finite;
};

/// Global consequence on one finite frame over std-mv, MV_n or a table algebra.
/// A failing verdict carries a Kripke countermodel on `fr`, re-verified by evaluation.
Verdict decide_on_frame(const KripkeFrame& fr, const FormulaSet& gamma, const Formula& phi, const Algebra& alg,
                        const DecideOptions& opts = {});

struct CardinalityOptions {
  std::size_t cap = 3;
  unsigned jobs = 1;
  DecideOptions decide;
};

/// Frame with worlds "0".."j-1" whose edges are the set bits of `mask`
/// (bit i*j+k stands for the edge i -> k).
KripkeFrame frame_from_mask(std::size_t j, std::uint64_t mask);

/// decide_on_frame over every frame on j labeled worlds; the failing frame
/// with the least mask is reported.
Verdict decide_cardinality(std::size_t j, const FormulaSet& gamma, const Formula& phi, const Algebra& alg,
                           const CardinalityOptions& opts = {});

struct ConsequencePair {
  FormulaSet gamma;
  Formula phi;
};

struct Emission {
  std::size_t pair = 0;  // index into the input list
  std::size_t stage = 0;
  std::size_t cardinality = 0;
  Verdict verdict;
};

/// Dovetailed search for refutations. Stage i (from 1) stores pair i and then
/// checks each stored, not yet refuted pair at every cardinality j <= min(i, budget, cap)
/// it has not been checked at. Stages run until every pair is stored and has
/// been checked at every cardinality up to min(budget, cap).
std::vector<Emission> coenumerate_nonconsequences(const std::vector<ConsequencePair>& pairs, std::size_t budget,
                                                  const Algebra& alg, const CardinalityOptions& opts = {});

}  // namespace mvml
