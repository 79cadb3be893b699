#pragma once

#include <cstddef>
#include <vector>

#include "mvml/algebra.hpp"
#include "mvml/kripke.hpp"
#include "mvml/pcp.hpp"
#include "mvml/syntax.hpp"

namespace mvml {

/// {y <-> []y, y <-> <>y, x <-> ([]x) * y, ~[]0}
FormulaSet sigma_premises();
/// x -> x * y
Formula sigma_conclusion();

/// Chain 0 -> 1 -> ... -> N+1 with y = a everywhere, x = a^(N+1-i) at i and x = 1 at N+1.
/// a = (N+2)/(N+3) over std-mv, pow(1) over the power chain.
KripkeModel build_nec_model(std::size_t n, ChainAlgebra alg);

struct SeparationCheck {
  std::size_t depth = 0;  // i in []^i g
  Formula formula;
  Value value;
  bool holds = false;  // value is 1
};

struct SeparationReport {
  std::size_t n = 0;
  std::string algebra;
  std::vector<SeparationCheck> checks;  // box_prefix(sigma, n) at world 0
  Value final_value;                    // x -> x*y at world 0
  bool final_below_one = false;

  bool pass() const;
};

SeparationReport verify_separation(std::size_t n, ChainAlgebra alg);
/// Same checks on a given model at world 0.
SeparationReport verify_separation(const KripkeModel& m, std::size_t n);

/// k-cycle 0 -> 1 -> ... -> k-1 -> 0 with y = alpha and x = 0.
KripkeModel build_global_sigma_model(std::size_t k, const Value& alpha, const Algebra& alg = Algebra::std_mv());

}  // namespace mvml
