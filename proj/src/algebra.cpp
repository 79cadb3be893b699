#include "mvml/algebra.hpp"

#include <algorithm>
#include <map>

#include "mvml/error.hpp"

namespace mvml {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw DomainError("empty rational");
  auto digits = [](const std::string& d, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < d.size() && (d[i] == '-' || d[i] == '+')) ++i;
    if (i == d.size()) return false;
    return std::all_of(d.begin() + static_cast<long>(i), d.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  Rational r;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw DomainError("malformed rational '" + text + "'");
    Natural d(den, 10);
    if (d == 0) throw DomainError("zero denominator in '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    r = Rational(Natural(num, 10), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!digits(whole, true) || (!frac.empty() && !digits(frac, false)))
      throw DomainError("malformed rational '" + text + "'");
    bool neg = whole[0] == '-';
    if (whole[0] == '+' || neg) whole.erase(0, 1);
    Natural scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    r = Rational(Natural(whole + frac, 10), scale);
    if (neg) r = -r;
  } else {
    if (!digits(s, true)) throw DomainError("malformed rational '" + text + "'");
    if (s[0] == '+') s.erase(0, 1);
    r = Rational(Natural(s, 10));
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Exp Exp::pow(Rational t) {
  if (t < 0) throw DomainError("negative exponent " + to_string(t));
  t.canonicalize();
  return Exp{false, std::move(t)};
}

const Rational& Value::rat() const {
  if (const auto* r = std::get_if<Rational>(&v_)) return *r;
  throw DomainError("value is not a rational");
}

const Exp& Value::exp() const {
  if (const auto* e = std::get_if<Exp>(&v_)) return *e;
  throw DomainError("value is not a power-chain element");
}

std::size_t Value::fin() const {
  if (const auto* f = std::get_if<Fin>(&v_)) return f->index;
  throw DomainError("value is not a table index");
}

std::string to_string(const Value& v) {
  if (v.is_rat()) return to_string(v.rat());
  if (v.is_exp()) return v.exp().is_zero ? "zero" : "pow(" + to_string(v.exp().t) + ")";
  return "#" + std::to_string(v.fin());
}

namespace {

void check_square(const std::vector<std::vector<std::size_t>>& tab, std::size_t n, const char* name) {
  if (tab.size() != n) throw DomainError(std::string(name) + " table has wrong size");
  for (const auto& row : tab) {
    if (row.size() != n) throw DomainError(std::string(name) + " table is not square");
    for (auto x : row)
      if (x >= n) throw DomainError(std::string(name) + " table entry out of range");
  }
}

}  // namespace

ValidationReport validate_finite_algebra(const FiniteTables& t) {
  const std::size_t n = t.size;
  if (n == 0) throw DomainError("empty carrier");
  check_square(t.meet, n, "meet");
  check_square(t.join, n, "join");
  check_square(t.times, n, "times");
  check_square(t.residuum, n, "residuum");
  if (t.zero >= n || t.one >= n) throw DomainError("designated constant out of range");

  ValidationReport rep;
  auto fail = [&](const char* law, std::vector<std::size_t> args) {
    rep.violations.push_back({law, std::move(args)});
  };
  const auto& M = t.meet;
  const auto& J = t.join;
  const auto& T = t.times;
  const auto& R = t.residuum;
  auto leq = [&](std::size_t a, std::size_t b) { return M[a][b] == a; };

  for (std::size_t a = 0; a < n; ++a) {
    if (M[a][a] != a) fail("meet idempotent", {a});
    if (J[a][a] != a) fail("join idempotent", {a});
    if (M[t.zero][a] != t.zero) fail("zero is bottom", {a});
    if (M[a][t.one] != a) fail("one is top", {a});
    if (T[a][t.one] != a) fail("times unit", {a});
    for (std::size_t b = 0; b < n; ++b) {
      if (M[a][b] != M[b][a]) fail("meet commutative", {a, b});
      if (J[a][b] != J[b][a]) fail("join commutative", {a, b});
      if (T[a][b] != T[b][a]) fail("times commutative", {a, b});
      if (M[a][J[a][b]] != a) fail("absorption meet-join", {a, b});
      if (J[a][M[a][b]] != a) fail("absorption join-meet", {a, b});
      for (std::size_t c = 0; c < n; ++c) {
        if (M[a][M[b][c]] != M[M[a][b]][c]) fail("meet associative", {a, b, c});
        if (J[a][J[b][c]] != J[J[a][b]][c]) fail("join associative", {a, b, c});
        if (T[a][T[b][c]] != T[T[a][b]][c]) fail("times associative", {a, b, c});
        if (leq(T[a][b], c) != leq(a, R[b][c])) fail("residuation", {a, b, c});
      }
    }
  }
  return rep;
}

FiniteTables mv_tables(std::size_t n) {
  if (n < 1) throw DomainError("MV_n needs n >= 1");
  FiniteTables t;
  t.size = n;
  t.zero = 0;
  t.one = n - 1;
  const long top = static_cast<long>(n) - 1;
  auto grid = [n] { return std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n)); };
  t.meet = grid();
  t.join = grid();
  t.times = grid();
  t.residuum = grid();
  for (long a = 0; a <= top; ++a) {
    for (long b = 0; b <= top; ++b) {
      t.meet[a][b] = static_cast<std::size_t>(std::min(a, b));
      t.join[a][b] = static_cast<std::size_t>(std::max(a, b));
      t.times[a][b] = static_cast<std::size_t>(std::max(0L, a + b - top));
      t.residuum[a][b] = static_cast<std::size_t>(std::min(top, top - a + b));
    }
  }
  return t;
}

Algebra Algebra::std_mv() { return Algebra(AlgebraKind::StdMV, 0); }
Algebra Algebra::std_godel() { return Algebra(AlgebraKind::StdGodel, 0); }

Algebra Algebra::std_product(unsigned long power_cap) {
  Algebra a(AlgebraKind::StdProduct, 0);
  a.power_cap_ = power_cap;
  return a;
}

Algebra Algebra::mv(std::size_t n) {
  if (n < 2) throw DomainError("MV_n needs n >= 2");
  return Algebra(AlgebraKind::MVn, n);
}

Algebra Algebra::exp_chain() { return Algebra(AlgebraKind::ExpChain, 0); }

Algebra Algebra::finite(FiniteTables tables) {
  auto rep = validate_finite_algebra(tables);
  if (!rep.valid()) {
    const auto& v = rep.violations.front();
    std::string args;
    for (auto i : v.args) args += (args.empty() ? "" : ",") + std::to_string(i);
    throw DomainError("tables violate " + v.law + " at (" + args + ")");
  }
  Algebra a(AlgebraKind::FiniteTable, 0);
  a.tables_ = std::make_shared<const FiniteTables>(std::move(tables));
  return a;
}

const FiniteTables& Algebra::tables() const {
  if (!tables_) throw DomainError("algebra has no tables");
  return *tables_;
}

std::string Algebra::name() const {
  switch (kind_) {
    case AlgebraKind::StdMV:
      return "std-mv";
    case AlgebraKind::StdGodel:
      return "std-godel";
    case AlgebraKind::StdProduct:
      return "std-product";
    case AlgebraKind::MVn:
      return "mv-" + std::to_string(n_);
    case AlgebraKind::ExpChain:
      return "exp-chain";
    case AlgebraKind::FiniteTable:
      return "finite-table";
  }
  return "?";
}

bool Algebra::is_finite() const noexcept {
  return kind_ == AlgebraKind::MVn || kind_ == AlgebraKind::FiniteTable;
}

std::vector<Value> Algebra::elements() const {
  std::vector<Value> out;
  if (kind_ == AlgebraKind::MVn) {
    for (std::size_t i = 0; i < n_; ++i) {
      Rational r(static_cast<unsigned long>(i));
      r /= static_cast<unsigned long>(n_ - 1);
      out.emplace_back(r);
    }
  } else if (kind_ == AlgebraKind::FiniteTable) {
    for (std::size_t i = 0; i < tables_->size; ++i) out.emplace_back(Fin{i});
  } else {
    throw DomainError(name() + " has an infinite carrier");
  }
  return out;
}

Value Algebra::zero() const {
  switch (kind_) {
    case AlgebraKind::ExpChain:
      return Exp::zero();
    case AlgebraKind::FiniteTable:
      return Fin{tables_->zero};
    default:
      return Rational(0);
  }
}

Value Algebra::one() const {
  switch (kind_) {
    case AlgebraKind::ExpChain:
      return Exp::pow(0);
    case AlgebraKind::FiniteTable:
      return Fin{tables_->one};
    default:
      return Rational(1);
  }
}

bool Algebra::contains(const Value& v) const {
  switch (kind_) {
    case AlgebraKind::ExpChain:
      return v.is_exp() && (v.exp().is_zero || v.exp().t >= 0);
    case AlgebraKind::FiniteTable:
      return v.is_fin() && v.fin() < tables_->size;
    case AlgebraKind::MVn: {
      if (!v.is_rat() || v.rat() < 0 || v.rat() > 1) return false;
      Rational scaled = v.rat() * static_cast<unsigned long>(n_ - 1);
      return scaled.get_den() == 1;
    }
    default:
      return v.is_rat() && v.rat() >= 0 && v.rat() <= 1;
  }
}

void Algebra::check(const Value& v) const {
  if (!contains(v)) throw DomainError("value " + to_string(v) + " is not in the carrier of " + name());
}

Value Algebra::apply(Conn c, const Value& a, const Value& b) const {
  check(a);
  check(b);
  return apply_unchecked(c, a, b);
}

Value Algebra::apply_unchecked(Conn c, const Value& a, const Value& b) const {
  if (kind_ == AlgebraKind::FiniteTable) {
    const auto& t = *tables_;
    std::size_t i = a.fin(), j = b.fin();
    switch (c) {
      case Conn::Meet:
        return Fin{t.meet[i][j]};
      case Conn::Join:
        return Fin{t.join[i][j]};
      case Conn::Times:
        return Fin{t.times[i][j]};
      case Conn::Implies:
        return Fin{t.residuum[i][j]};
    }
  }
  if (kind_ == AlgebraKind::ExpChain) {
    const Exp& x = a.exp();
    const Exp& y = b.exp();
    switch (c) {
      case Conn::Meet:
        return leq(a, b) ? a : b;
      case Conn::Join:
        return leq(a, b) ? b : a;
      case Conn::Times:
        if (x.is_zero || y.is_zero) return Exp::zero();
        return Exp::pow(x.t + y.t);
      case Conn::Implies:
        if (x.is_zero) return Exp::pow(0);
        if (y.is_zero) return Exp::zero();
        return Exp::pow(y.t > x.t ? Rational(y.t - x.t) : Rational(0));
    }
  }
  const Rational& x = a.rat();
  const Rational& y = b.rat();
  switch (c) {
    case Conn::Meet:
      return x <= y ? x : y;
    case Conn::Join:
      return x <= y ? y : x;
    default:
      break;
  }
  switch (kind_) {
    case AlgebraKind::StdMV:
    case AlgebraKind::MVn: {
      if (c == Conn::Times) {
        Rational s = x + y - 1;
        return s > 0 ? s : Rational(0);
      }
      Rational s = 1 - x + y;
      return s < 1 ? s : Rational(1);
    }
    case AlgebraKind::StdGodel:
      if (c == Conn::Times) return x <= y ? x : y;
      return x <= y ? Rational(1) : y;
    case AlgebraKind::StdProduct: {
      if (c == Conn::Times) return Rational(x * y);
      if (x <= y) return Rational(1);
      return Rational(y / x);
    }
    default:
      break;
  }
  throw DomainError("unsupported algebra");
}

bool Algebra::leq(const Value& a, const Value& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case AlgebraKind::ExpChain: {
      const Exp& x = a.exp();
      const Exp& y = b.exp();
      if (x.is_zero) return true;
      if (y.is_zero) return false;
      return x.t >= y.t;
    }
    case AlgebraKind::FiniteTable:
      return tables_->meet[a.fin()][b.fin()] == a.fin();
    default:
      return a.rat() <= b.rat();
  }
}

Value Algebra::power(const Value& a, const Natural& n) const {
  check(a);
  if (n < 0) throw DomainError("negative power");
  if (n == 0) return one();
  switch (kind_) {
    case AlgebraKind::StdMV:
    case AlgebraKind::MVn: {
      Rational r = 1 - Rational(n) * (1 - a.rat());
      return r > 0 ? r : Rational(0);
    }
    case AlgebraKind::StdGodel:
      return a;
    case AlgebraKind::ExpChain:
      if (a.exp().is_zero) return a;
      return Exp::pow(a.exp().t * Rational(n));
    case AlgebraKind::StdProduct: {
      if (n > power_cap_)
        throw ResourceLimit("power " + n.get_str() + " exceeds the cap " + std::to_string(power_cap_) +
                            "; use exp-chain for large exponents");
      unsigned long e = n.get_ui();
      Rational r;
      mpz_pow_ui(r.get_num_mpz_t(), a.rat().get_num_mpz_t(), e);
      mpz_pow_ui(r.get_den_mpz_t(), a.rat().get_den_mpz_t(), e);
      r.canonicalize();
      return r;
    }
    case AlgebraKind::FiniteTable: {
      // Powers of a are eventually periodic; find the cycle and index into it.
      const auto& t = *tables_;
      std::vector<std::size_t> seq{a.fin()};
      std::map<std::size_t, std::size_t> first;
      first[a.fin()] = 0;
      while (true) {
        if (Natural(static_cast<unsigned long>(seq.size())) == n) return Fin{seq.back()};
        std::size_t next = t.times[a.fin()][seq.back()];
        auto it = first.find(next);
        if (it != first.end()) {
          Natural start = static_cast<unsigned long>(it->second);
          Natural period = static_cast<unsigned long>(seq.size() - it->second);
          Natural idx = start + (n - 1 - start) % period;
          return Fin{seq[idx.get_ui()]};
        }
        first[next] = seq.size();
        seq.push_back(next);
      }
    }
  }
  throw DomainError("unsupported algebra");
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (a.kind_ != b.kind_ || a.n_ != b.n_) return false;
  if (a.kind_ != AlgebraKind::FiniteTable) return true;
  const auto& x = *a.tables_;
  const auto& y = *b.tables_;
  return x.size == y.size && x.meet == y.meet && x.join == y.join && x.times == y.times &&
         x.residuum == y.residuum && x.zero == y.zero && x.one == y.one;
}

}  // namespace mvml
