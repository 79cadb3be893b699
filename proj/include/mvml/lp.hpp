#pragma once

#include <cstddef>
#include <vector>

#include "mvml/algebra.hpp"

namespace mvml::lp {

enum class Sense { Le, Eq, Ge };

/// sum coeffs[i] * x_i  (sense)  rhs
struct Constraint {
  std::vector<Rational> coeffs;
  Sense sense = Sense::Le;
  Rational rhs;
};

/// Maximize objective . x subject to the constraints and x >= 0.
struct Program {
  std::size_t num_vars = 0;
  std::vector<Constraint> constraints;
  std::vector<Rational> objective;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Two-phase dense tableau simplex in exact arithmetic, Bland's rule.
Result maximize(const Program& p);

}  // namespace mvml::lp
