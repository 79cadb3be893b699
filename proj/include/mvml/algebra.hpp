#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace mvml {

using Rational = mpq_class;
using Natural = mpz_class;

/// Parses "p/q", "p" or a finite decimal such as "0.25"; the result is canonical.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// Element of the power chain {0} u {a^t : t >= 0}, a fixed and symbolic.
struct Exp {
  bool is_zero = false;
  Rational t;  // exponent, meaningful when !is_zero

  static Exp zero() { return Exp{true, 0}; }
  static Exp pow(Rational t);

  friend bool operator==(const Exp& a, const Exp& b) {
    return a.is_zero == b.is_zero && (a.is_zero || a.t == b.t);
  }
};

/// Element of a finite table algebra.
struct Fin {
  std::size_t index = 0;
  friend bool operator==(const Fin& a, const Fin& b) { return a.index == b.index; }
};

class Value {
 public:
  Value() : v_(Rational(0)) {}
  Value(Rational r) : v_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Value(Exp e) : v_(std::move(e)) {}       // NOLINT(google-explicit-constructor)
  Value(Fin f) : v_(f) {}                  // NOLINT(google-explicit-constructor)

  static Value rat(long num, unsigned long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return Value(std::move(q));
  }
  static Value pow(Rational t) { return Value(Exp::pow(std::move(t))); }
  static Value exp_zero() { return Value(Exp::zero()); }
  static Value fin(std::size_t i) { return Value(Fin{i}); }

  bool is_rat() const noexcept { return std::holds_alternative<Rational>(v_); }
  bool is_exp() const noexcept { return std::holds_alternative<Exp>(v_); }
  bool is_fin() const noexcept { return std::holds_alternative<Fin>(v_); }

  const Rational& rat() const;
  const Exp& exp() const;
  std::size_t fin() const;

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }

 private:
  std::variant<Rational, Exp, Fin> v_;
};

/// "1/2", "pow(3/2)", "zero", "#2".
std::string to_string(const Value& v);

enum class Conn { Meet, Join, Times, Implies };

/// Operation tables of a finite algebra over the carrier {0, ..., size-1}.
struct FiniteTables {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> meet, join, times, residuum;
  std::size_t zero = 0;
  std::size_t one = 0;
};

struct Violation {
  std::string law;
  std::vector<std::size_t> args;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const noexcept { return violations.empty(); }
};

/// Exhaustive check of the bounded-lattice, commutative-monoid and residuation laws.
/// Throws DomainError if the tables are not square tables over a common carrier.
ValidationReport validate_finite_algebra(const FiniteTables& t);

enum class AlgebraKind { StdMV, StdGodel, StdProduct, MVn, ExpChain, FiniteTable };

class Algebra {
 public:
  static Algebra std_mv();
  static Algebra std_godel();
  static Algebra std_product(unsigned long power_cap = 64);
  static Algebra mv(std::size_t n);
  static Algebra exp_chain();
  /// Throws DomainError listing the first violation if the tables are not an FL_ew algebra.
  static Algebra finite(FiniteTables tables);

  AlgebraKind kind() const noexcept { return kind_; }
  /// Carrier size for MVn; 0 otherwise.
  std::size_t n() const noexcept { return n_; }
  const FiniteTables& tables() const;
  unsigned long power_cap() const noexcept { return power_cap_; }
  /// "std-mv", "std-godel", "std-product", "mv-3", "exp-chain", "finite-table".
  std::string name() const;

  bool is_finite() const noexcept;
  /// Every element, in increasing order for MVn; table order for FiniteTable.
  std::vector<Value> elements() const;

  Value zero() const;
  Value one() const;
  bool contains(const Value& v) const;
  /// Throws DomainError unless `v` lies in the carrier.
  void check(const Value& v) const;

  Value apply(Conn c, const Value& a, const Value& b) const;
  Value meet(const Value& a, const Value& b) const { return apply(Conn::Meet, a, b); }
  Value join(const Value& a, const Value& b) const { return apply(Conn::Join, a, b); }
  Value times(const Value& a, const Value& b) const { return apply(Conn::Times, a, b); }
  Value implies(const Value& a, const Value& b) const { return apply(Conn::Implies, a, b); }
  bool leq(const Value& a, const Value& b) const;
  bool is_one(const Value& v) const { return v == one(); }

  /// a^n; n = 0 gives the unit. Throws ResourceLimit for StdProduct above the cap.
  Value power(const Value& a, const Natural& n) const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  Algebra(AlgebraKind k, std::size_t n) : kind_(k), n_(n) {}
  Value apply_unchecked(Conn c, const Value& a, const Value& b) const;

  AlgebraKind kind_;
  std::size_t n_ = 0;
  unsigned long power_cap_ = 64;
  std::shared_ptr<const FiniteTables> tables_;
};

/// Tables of MV_n, with index i standing for i/(n-1).
FiniteTables mv_tables(std::size_t n);

}  // namespace mvml
