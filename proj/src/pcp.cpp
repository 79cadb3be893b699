#include "mvml/pcp.hpp"

#include "mvml/error.hpp"

namespace mvml {

namespace {

Natural ipow(unsigned long s, std::size_t e) {
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), s, e);
  return out;
}

unsigned long checked_power(const Natural& n) {
  if (n > kMaxEncodedPower) throw ResourceLimit("power " + n.get_str() + " is too large to expand");
  return n.get_ui();
}

void check_numeral(const Numeral& x, unsigned long s) {
  if (x.length < 1) throw DomainError("numeral length must be positive");
  if (x.value < 0 || x.value >= ipow(s, x.length))
    throw DomainError("numeral " + x.value.get_str() + " does not fit in " + std::to_string(x.length) + " digits");
}

// b^e * z^k, with the z factor omitted when k = 0.
Formula step(const Formula& boxed, const Natural& e, const Natural& k) {
  Formula f = Formula::power(boxed, checked_power(e));
  if (k == 0) return f;
  return Formula::times(f, Formula::power(Formula::var("z"), checked_power(k)));
}

}  // namespace

void PCPInstance::validate() const {
  if (base < 2) throw DomainError("base must be at least 2");
  if (pairs.empty()) throw DomainError("instance has no pairs");
  for (const auto& [x, y] : pairs) {
    check_numeral(x, base);
    check_numeral(y, base);
  }
}

Numeral concat(const Numeral& x, const Numeral& y, unsigned long s) {
  if (s < 2) throw DomainError("base must be at least 2");
  check_numeral(x, s);
  check_numeral(y, s);
  return {x.value * ipow(s, y.length) + y.value, x.length + y.length};
}

Formula pair_disjunct(const PCPInstance& p, std::size_t i) {
  if (i < 1 || i > p.pairs.size()) throw DomainError("pair index out of range");
  const auto& [xi, yi] = p.pairs[i - 1];
  Formula x = Formula::var("x"), y = Formula::var("y");
  Formula fx = Formula::equiv(x, step(Formula::box(x), ipow(p.base, xi.length), xi.value));
  Formula fy = Formula::equiv(y, step(Formula::box(y), ipow(p.base, yi.length), yi.value));
  return Formula::conj(fx, fy);
}

Formula pair_disjunction(const PCPInstance& p) {
  Formula out = pair_disjunct(p, 1);
  for (std::size_t i = 2; i <= p.pairs.size(); ++i) out = Formula::disj(out, pair_disjunct(p, i));
  return out;
}

PCPEncoding encode(const PCPInstance& p) {
  p.validate();
  PCPEncoding enc;
  const Formula not_box0 = Formula::neg(Formula::box(Formula::zero()));
  for (const char* name : {"x", "y", "z"}) {
    Formula v = Formula::var(name);
    enc.gamma.insert(Formula::implies(not_box0, Formula::equiv(Formula::box(v), Formula::diamond(v))));
  }
  Formula z = Formula::var("z");
  enc.gamma.insert(Formula::implies(not_box0, Formula::equiv(z, Formula::box(z))));
  enc.gamma.insert(pair_disjunction(p));
  enc.phi = parse("(x <-> y)^2 -> (x -> x*z) \\/ z");
  return enc;
}

std::pair<Numeral, Numeral> concatenations(const PCPInstance& p, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw DomainError("empty index sequence");
  std::optional<Numeral> x, y;
  for (auto i : indices) {
    if (i < 1 || i > p.pairs.size()) throw DomainError("pair index " + std::to_string(i) + " out of range");
    const auto& [xi, yi] = p.pairs[i - 1];
    x = x ? concat(*x, xi, p.base) : xi;
    y = y ? concat(*y, yi, p.base) : yi;
  }
  return {*x, *y};
}

bool verify_solution(const PCPInstance& p, const std::vector<std::size_t>& indices) {
  auto [x, y] = concatenations(p, indices);
  return x == y;
}

KripkeModel build_chain_model(const PCPInstance& p, const std::vector<std::size_t>& indices, ChainAlgebra alg) {
  p.validate();
  auto [X, Y] = concatenations(p, indices);
  const std::size_t k = indices.size();
  Algebra algebra = alg == ChainAlgebra::StdMV ? Algebra::std_mv() : Algebra::exp_chain();
  Value a;
  if (alg == ChainAlgebra::StdMV) {
    Natural r = X.value > Y.value ? X.value : Y.value;
    a = Rational(r, r + 1);
  } else {
    a = Value::pow(1);
  }
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::map<std::string, std::vector<Value>> cols;
  std::optional<Numeral> x, y;
  for (std::size_t j = 1; j <= k; ++j) {
    names.push_back("v" + std::to_string(j));
    if (j >= 2) edges.emplace_back(j - 1, j - 2);
    const auto& [xi, yi] = p.pairs[indices[j - 1] - 1];
    x = x ? concat(*x, xi, p.base) : xi;
    y = y ? concat(*y, yi, p.base) : yi;
    cols["x"].push_back(algebra.power(a, x->value));
    cols["y"].push_back(algebra.power(a, y->value));
    cols["z"].push_back(a);
  }
  return KripkeModel::from_columns(KripkeFrame(names, edges), algebra, cols);
}

KripkeModel build_countermodel(const PCPInstance& p, const std::vector<std::size_t>& indices, ChainAlgebra alg) {
  if (!verify_solution(p, indices)) throw DomainError("index sequence is not a solution");
  return build_chain_model(p, indices, alg);
}

std::optional<Natural> recover_exponent(const Algebra& alg, const Value& base, const Value& v) {
  alg.check(base);
  alg.check(v);
  switch (alg.kind()) {
    case AlgebraKind::StdMV:
    case AlgebraKind::MVn: {
      const Rational& a = base.rat();
      const Rational& x = v.rat();
      if (a == 1 || x == 0) return std::nullopt;
      Rational n = (1 - x) / (1 - a);
      if (n.get_den() != 1) return std::nullopt;
      return n.get_num();
    }
    case AlgebraKind::ExpChain: {
      const Exp& a = base.exp();
      const Exp& x = v.exp();
      if (a.is_zero || x.is_zero || a.t == 0) return std::nullopt;
      Rational n = x.t / a.t;
      if (n.get_den() != 1) return std::nullopt;
      return n.get_num();
    }
    case AlgebraKind::StdProduct: {
      const Rational& a = base.rat();
      const Rational& x = v.rat();
      if (a == 0 || a == 1 || x == 0) return std::nullopt;
      Rational acc = 1;
      for (unsigned long n = 0; n <= alg.power_cap(); ++n) {
        if (acc == x) return Natural(n);
        if (acc < x) return std::nullopt;
        acc *= a;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

std::vector<std::size_t> extract_solution(const PCPInstance& p, const KripkeModel& m, std::size_t top) {
  p.validate();
  auto order = chain_order(m.frame());
  if (!order) throw DomainError("model is not a chain");
  if (order->front() != top) throw DomainError("top world is not the first world of the chain");
  PCPEncoding enc = encode(p);
  for (const char* v : {"x", "y", "z"})
    if (!m.declares(v)) throw DomainError(std::string("model does not declare ") + v);
  if (!globally_satisfies(m, enc.gamma).holds) throw DomainError("model does not satisfy the premises globally");
  const Algebra& alg = m.algebra();
  if (alg.is_one(evaluate(m, top, enc.phi))) throw DomainError("phi is not refuted at the top world");

  Evaluator ev(m);
  std::vector<Formula> disjuncts;
  for (std::size_t i = 1; i <= p.pairs.size(); ++i) disjuncts.push_back(pair_disjunct(p, i));

  std::vector<std::size_t> out;
  std::optional<Numeral> X, Y;
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const std::size_t w = *it;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i <= disjuncts.size(); ++i)
      if (alg.is_one(ev.value(w, disjuncts[i - 1]))) candidates.push_back(i);
    if (candidates.empty()) throw DomainError("no disjunct holds at world " + m.frame().name(w));
    std::size_t chosen = candidates.front();
    if (candidates.size() > 1) {
      const Value& alpha = m.value(w, "z");
      auto ex = recover_exponent(alg, alpha, m.value(w, "x"));
      auto ey = recover_exponent(alg, alpha, m.value(w, "y"));
      if (!ex || !ey) throw DomainError("exponent not recoverable at world " + m.frame().name(w));
      chosen = 0;
      for (auto i : candidates) {
        const auto& [xi, yi] = p.pairs[i - 1];
        Numeral nx = X ? concat(*X, xi, p.base) : xi;
        Numeral ny = Y ? concat(*Y, yi, p.base) : yi;
        if (nx.value == *ex && ny.value == *ey) {
          chosen = i;
          break;
        }
      }
      if (chosen == 0) throw DomainError("no disjunct matches the exponents at world " + m.frame().name(w));
    }
    const auto& [xi, yi] = p.pairs[chosen - 1];
    X = X ? concat(*X, xi, p.base) : xi;
    Y = Y ? concat(*Y, yi, p.base) : yi;
    out.push_back(chosen);
  }
  return out;
}

std::vector<std::vector<std::size_t>> find_solutions(const PCPInstance& p, std::size_t max_len) {
  p.validate();
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = p.pairs.size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> idx(len, 1);
    while (true) {
      if (verify_solution(p, idx)) out.push_back(idx);
      std::size_t pos = len;
      while (pos > 0 && idx[pos - 1] == n) idx[--pos] = 1;
      if (pos == 0) break;
      ++idx[pos - 1];
    }
  }
  return out;
}

}  // namespace mvml
