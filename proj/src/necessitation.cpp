#include "mvml/necessitation.hpp"

#include "mvml/error.hpp"

namespace mvml {

FormulaSet sigma_premises() {
  Formula x = Formula::var("x"), y = Formula::var("y");
  return {Formula::equiv(y, Formula::box(y)), Formula::equiv(y, Formula::diamond(y)),
          Formula::equiv(x, Formula::times(Formula::box(x), y)), Formula::neg(Formula::box(Formula::zero()))};
}

Formula sigma_conclusion() {
  Formula x = Formula::var("x"), y = Formula::var("y");
  return Formula::implies(x, Formula::times(x, y));
}

KripkeModel build_nec_model(std::size_t n, ChainAlgebra alg) {
  Algebra algebra = alg == ChainAlgebra::StdMV ? Algebra::std_mv() : Algebra::exp_chain();
  Value a = alg == ChainAlgebra::StdMV ? Value(Rational(n + 2, n + 3)) : Value::pow(1);
  std::vector<Value> x, y(n + 2, a);
  for (std::size_t i = 0; i <= n; ++i) x.push_back(algebra.power(a, Natural(n + 1 - i)));
  x.push_back(algebra.one());
  return KripkeModel::from_columns(KripkeFrame::chain(n + 2), algebra, {{"x", x}, {"y", y}});
}

bool SeparationReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.holds) return false;
  return final_below_one;
}

SeparationReport verify_separation(const KripkeModel& m, std::size_t n) {
  const auto kind = m.algebra().kind();
  if (kind != AlgebraKind::StdMV && kind != AlgebraKind::ExpChain)
    throw DomainError("separation models live over std-mv or the power chain");
  SeparationReport r;
  r.n = n;
  r.algebra = m.algebra().name();
  Evaluator ev(m);
  FormulaSet sigma = sigma_premises();
  for (std::size_t i = 0; i <= n; ++i)
    for (const auto& g : sigma) {
      Formula f = Formula::box_power(g, i);
      Value v = ev.value(0, f);
      r.checks.push_back({i, f, v, m.algebra().is_one(v)});
    }
  r.final_value = ev.value(0, sigma_conclusion());
  r.final_below_one = !m.algebra().is_one(r.final_value);
  return r;
}

SeparationReport verify_separation(std::size_t n, ChainAlgebra alg) {
  return verify_separation(build_nec_model(n, alg), n);
}

KripkeModel build_global_sigma_model(std::size_t k, const Value& alpha, const Algebra& alg) {
  if (k < 1) throw DomainError("cycle length must be at least 1");
  alg.check(alpha);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
  return KripkeModel::from_columns(KripkeFrame::numbered(k, edges), alg,
                                   {{"x", std::vector<Value>(k, alg.zero())}, {"y", std::vector<Value>(k, alpha)}});
}

}  // namespace mvml
