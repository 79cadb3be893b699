#pragma once

// Generators and independent reference implementations shared by the tests.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mvml/algebra.hpp"
#include "mvml/kripke.hpp"
#include "mvml/lp.hpp"
#include "mvml/syntax.hpp"

namespace testing {

using namespace mvml;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

 private:
  std::mt19937_64 gen_;
};

inline const std::vector<Op>& all_ops() {
  static const std::vector<Op> ops{Op::Zero, Op::One, Op::Var, Op::And, Op::Or, Op::Times, Op::Implies, Op::Box, Op::Diamond};
  return ops;
}

/// Random formula of depth at most `depth` built from `ops` (leaves: those of Zero, One, Var present).
inline Formula random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& vars,
                              const std::vector<Op>& ops = all_ops()) {
  std::vector<Op> leaves, inner;
  for (auto op : ops) (op == Op::Zero || op == Op::One || op == Op::Var ? leaves : inner).push_back(op);
  std::function<Formula(std::size_t)> go = [&](std::size_t d) -> Formula {
    Op op = (d == 0 || inner.empty() || rng.chance(0.25)) ? rng.pick(leaves) : rng.pick(inner);
    switch (op) {
      case Op::Zero:
        return Formula::zero();
      case Op::One:
        return Formula::one();
      case Op::Var:
        return Formula::var(rng.pick(vars));
      case Op::And:
        return Formula::conj(go(d - 1), go(d - 1));
      case Op::Or:
        return Formula::disj(go(d - 1), go(d - 1));
      case Op::Times:
        return Formula::times(go(d - 1), go(d - 1));
      case Op::Implies:
        return Formula::implies(go(d - 1), go(d - 1));
      case Op::Box:
        return Formula::box(go(d - 1));
      case Op::Diamond:
        return Formula::diamond(go(d - 1));
    }
    return Formula::zero();
  };
  return go(depth);
}

inline Rational random_unit_rational(Rng& rng, unsigned long max_den = 12) {
  unsigned long den = 1 + rng.below(max_den);
  Rational r(static_cast<unsigned long>(rng.below(den + 1)), den);
  r.canonicalize();
  return r;
}

inline Value random_value(Rng& rng, const Algebra& alg) {
  switch (alg.kind()) {
    case AlgebraKind::ExpChain:
      if (rng.chance(0.1)) return Value::exp_zero();
      return Value::pow(random_unit_rational(rng, 6) * static_cast<unsigned long>(1 + rng.below(3)));
    case AlgebraKind::MVn:
    case AlgebraKind::FiniteTable: {
      auto els = alg.elements();
      return els[rng.below(els.size())];
    }
    default:
      return random_unit_rational(rng);
  }
}

inline KripkeFrame random_frame(Rng& rng, std::size_t n, double edge_prob) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng.chance(edge_prob)) edges.emplace_back(i, j);
  return KripkeFrame::numbered(n, edges);
}

/// Frame whose edges only go from lower to higher index, so every height is finite.
inline KripkeFrame random_dag(Rng& rng, std::size_t n, double edge_prob) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.chance(edge_prob)) edges.emplace_back(i, j);
  return KripkeFrame::numbered(n, edges);
}

inline KripkeModel random_model(Rng& rng, const KripkeFrame& fr, const Algebra& alg,
                                const std::vector<std::string>& vars) {
  std::map<std::string, std::vector<Value>> cols;
  for (const auto& v : vars)
    for (std::size_t w = 0; w < fr.size(); ++w) cols[v].push_back(random_value(rng, alg));
  return KripkeModel::from_columns(fr, alg, cols);
}

// ---- reference implementations ----

/// Recursive evaluator over MV_3 with values coded as 0, 1, 2 (meaning 0, 1/2, 1).
inline int naive_mv3(const Formula& f, std::size_t w, const std::vector<std::vector<std::size_t>>& succ,
                     const std::map<std::string, std::vector<int>>& val) {
  switch (f.op()) {
    case Op::Zero:
      return 0;
    case Op::One:
      return 2;
    case Op::Var:
      return val.at(f.name()).at(w);
    case Op::And:
      return std::min(naive_mv3(f.lhs(), w, succ, val), naive_mv3(f.rhs(), w, succ, val));
    case Op::Or:
      return std::max(naive_mv3(f.lhs(), w, succ, val), naive_mv3(f.rhs(), w, succ, val));
    case Op::Times:
      return std::max(0, naive_mv3(f.lhs(), w, succ, val) + naive_mv3(f.rhs(), w, succ, val) - 2);
    case Op::Implies:
      return std::min(2, 2 - naive_mv3(f.lhs(), w, succ, val) + naive_mv3(f.rhs(), w, succ, val));
    case Op::Box: {
      int out = 2;
      for (auto u : succ[w]) out = std::min(out, naive_mv3(f.body(), u, succ, val));
      return out;
    }
    case Op::Diamond: {
      int out = 0;
      for (auto u : succ[w]) out = std::max(out, naive_mv3(f.body(), u, succ, val));
      return out;
    }
  }
  return -1;
}

/// Base-s digit string of length `len` for `value`, via repeated division.
inline std::string digits(Natural value, std::size_t len, unsigned long s) {
  std::string out(len, '0');
  for (std::size_t i = len; i-- > 0;) {
    Natural d = value % s;
    out[i] = static_cast<char>('0' + d.get_ui());
    value /= s;
  }
  return out;
}

inline Natural from_digits(const std::string& d, unsigned long s) {
  Natural out = 0;
  for (char c : d) out = out * s + (c - '0');
  return out;
}

/// Solves the square system A x = b over the rationals; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational k = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= k * a[c][j];
      b[r] -= k * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Optimum of a bounded program by enumerating every basic solution. nullopt if infeasible.
inline std::optional<Rational> brute_force_lp(const lp::Program& p) {
  const std::size_t n = p.num_vars;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& c : p.constraints) {
    rows.push_back(c.coeffs);
    rhs.push_back(c.rhs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, 0);
    e[i] = 1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  auto feasible = [&](const std::vector<Rational>& x) {
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] < 0) return false;
    for (const auto& c : p.constraints) {
      Rational lhs = 0;
      for (std::size_t i = 0; i < n; ++i) lhs += c.coeffs[i] * x[i];
      if (c.sense == lp::Sense::Le && lhs > c.rhs) return false;
      if (c.sense == lp::Sense::Ge && lhs < c.rhs) return false;
      if (c.sense == lp::Sense::Eq && lhs != c.rhs) return false;
    }
    return true;
  };
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t k, std::size_t from) {
    if (k == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (auto i : pick) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
      auto x = solve_square(a, b);
      if (!x || !feasible(*x)) return;
      Rational v = 0;
      for (std::size_t i = 0; i < n; ++i) v += p.objective[i] * (*x)[i];
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t i = from; i < rows.size(); ++i) {
      pick[k] = i;
      go(k + 1, i + 1);
    }
  };
  go(0, 0);
  return best;
}

/// Naive Lukasiewicz evaluation of a propositional formula.
inline Rational luk_value(const Formula& f, const std::map<std::string, Rational>& v) {
  switch (f.op()) {
    case Op::Zero:
      return 0;
    case Op::One:
      return 1;
    case Op::Var:
      return v.at(f.name());
    case Op::And:
      return std::min(luk_value(f.lhs(), v), luk_value(f.rhs(), v));
    case Op::Or:
      return std::max(luk_value(f.lhs(), v), luk_value(f.rhs(), v));
    case Op::Times:
      return std::max(Rational(0), Rational(luk_value(f.lhs(), v) + luk_value(f.rhs(), v) - 1));
    case Op::Implies:
      return std::min(Rational(1), Rational(1 - luk_value(f.lhs(), v) + luk_value(f.rhs(), v)));
    default:
      throw std::logic_error("modal formula in luk_value");
  }
}

/// A grid valuation over {0, 1/k, ..., 1} satisfying every premise and refuting phi, if any.
inline std::optional<std::map<std::string, Rational>> grid_refutation(const FormulaSet& gamma, const Formula& phi,
                                                                      unsigned long k) {
  std::set<std::string> vs = variables(gamma);
  for (const auto& v : variables(phi)) vs.insert(v);
  std::vector<std::string> vars(vs.begin(), vs.end());
  std::vector<unsigned long> idx(vars.size(), 0);
  while (true) {
    std::map<std::string, Rational> val;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Rational r(idx[i], k);
      r.canonicalize();
      val[vars[i]] = r;
    }
    bool ok = true;
    for (const auto& g : gamma)
      if (luk_value(g, val) != 1) ok = false;
    if (ok && luk_value(phi, val) != 1) return val;
    std::size_t pos = 0;
    while (pos < idx.size() && idx[pos] == k) idx[pos++] = 0;
    if (pos == idx.size()) return std::nullopt;
    ++idx[pos];
  }
}

}  // namespace testing
