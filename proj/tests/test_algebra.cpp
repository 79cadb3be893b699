#include <doctest.h>

#include "mvml/algebra.hpp"
#include "mvml/error.hpp"
#include "support.hpp"

using namespace mvml;
using testing::Rng;

namespace {

Value r(long n, unsigned long d = 1) { return Value::rat(n, d); }

std::vector<Algebra> infinite_algebras() {
  return {Algebra::std_mv(), Algebra::std_godel(), Algebra::std_product(), Algebra::exp_chain()};
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("rational parsing") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("0.05") == Rational(1, 20));
    CHECK(parse_rational("010/012") == Rational(5, 6));
    CHECK(parse_rational("1") == 1);
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK(to_string(Rational(1)) == "1");
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("half"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
  }

  TEST_CASE("operations of the standard algebras") {
    Algebra mv = Algebra::std_mv(), g = Algebra::std_godel(), pr = Algebra::std_product();
    CHECK(mv.times(r(1, 2), r(1, 2)) == r(0));
    CHECK(mv.implies(r(3, 4), r(1, 4)) == r(1, 2));
    CHECK(mv.meet(r(1, 3), r(1, 2)) == r(1, 3));
    CHECK(mv.join(r(1, 3), r(1, 2)) == r(1, 2));
    CHECK(pr.implies(r(1, 2), r(1, 4)) == r(1, 2));
    CHECK(pr.implies(r(1, 4), r(1, 2)) == r(1));
    CHECK(pr.implies(r(0), r(0)) == r(1));
    CHECK(pr.times(r(1, 2), r(1, 3)) == r(1, 6));
    CHECK(g.times(r(1, 2), r(1, 3)) == r(1, 3));
    CHECK(g.implies(r(1, 2), r(1, 3)) == r(1, 3));
    CHECK(g.implies(r(1, 3), r(1, 2)) == r(1));
  }

  TEST_CASE("power chain operations") {
    Algebra e = Algebra::exp_chain();
    CHECK(e.times(Value::pow(2), Value::pow(3)) == Value::pow(5));
    CHECK(e.implies(Value::pow(2), Value::pow(5)) == Value::pow(3));
    CHECK(e.implies(Value::pow(5), Value::pow(2)) == Value::pow(0));
    CHECK(e.implies(Value::exp_zero(), Value::pow(7)) == Value::pow(0));
    CHECK(e.implies(Value::pow(7), Value::exp_zero()) == Value::exp_zero());
    CHECK(e.times(Value::exp_zero(), Value::pow(1)) == Value::exp_zero());
    CHECK(e.meet(Value::pow(2), Value::pow(3)) == Value::pow(3));
    CHECK(e.join(Value::pow(2), Value::pow(3)) == Value::pow(2));
    CHECK(e.one() == Value::pow(0));
    CHECK(e.zero() == Value::exp_zero());
  }

  TEST_CASE("power chain products agree with the product algebra at base 1/2") {
    Algebra e = Algebra::exp_chain(), pr = Algebra::std_product();
    auto image = [](const Value& v) -> Rational {
      Rational out = 1;
      for (unsigned long i = 0; i < v.exp().t.get_num().get_ui(); ++i) out /= 2;
      return out;
    };
    for (long s = 0; s <= 6; ++s)
      for (long t = 0; t <= 6; ++t) {
        Value a = Value::pow(s), b = Value::pow(t);
        CHECK(image(e.times(a, b)) == pr.times(image(a), image(b)).rat());
        CHECK(image(e.implies(a, b)) == pr.implies(image(a), image(b)).rat());
      }
  }

  TEST_CASE("carrier checks") {
    Algebra mv = Algebra::std_mv();
    CHECK_THROWS_AS(mv.times(r(3, 2), r(1)), DomainError);
    CHECK_THROWS_AS(mv.times(Value::pow(1), r(1)), DomainError);
    CHECK_THROWS_AS(Algebra::mv(3).check(r(1, 3)), DomainError);
    CHECK_NOTHROW(Algebra::mv(3).check(r(1, 2)));
    CHECK_THROWS_AS(Algebra::exp_chain().check(Value::pow(-1)), DomainError);
    CHECK_THROWS_AS(Algebra::mv(1), DomainError);
  }

  TEST_CASE("powers") {
    Algebra mv = Algebra::std_mv();
    CHECK(mv.power(r(7, 8), 8) == r(0));
    CHECK(mv.power(r(7, 8), 7) == r(1, 8));
    CHECK(mv.power(r(7, 8), 0) == r(1));
    CHECK(Algebra::exp_chain().power(Value::pow(1), 7) == Value::pow(7));
    CHECK(Algebra::std_godel().power(r(1, 3), Natural("1000000000000")) == r(1, 3));
    CHECK(Algebra::std_product().power(r(1, 2), 10) == r(1, 1024));
    CHECK(Algebra::mv(5).power(r(3, 4), 2) == r(1, 2));
  }

  TEST_CASE("product powers above the cap are refused") {
    CHECK_THROWS_AS(Algebra::std_product().power(r(1, 2), 65), ResourceLimit);
    CHECK_NOTHROW(Algebra::std_product().power(r(1, 2), 64));
    CHECK_NOTHROW(Algebra::std_product(200).power(r(1, 2), 65));
  }

  TEST_CASE("order") {
    CHECK(Algebra::std_mv().leq(r(0), r(1)));
    CHECK(Algebra::exp_chain().leq(Value::pow(3), Value::pow(2)));
    CHECK_FALSE(Algebra::exp_chain().leq(Value::pow(2), Value::pow(3)));
    CHECK(Algebra::exp_chain().leq(Value::exp_zero(), Value::pow(100)));
    CHECK(Algebra::mv(3).leq(r(1, 2), r(1, 2)));
  }

  TEST_CASE("MV_n carriers") {
    auto els = Algebra::mv(3).elements();
    REQUIRE(els.size() == 3);
    CHECK(els[1] == r(1, 2));
    CHECK(Algebra::mv(2).elements() == std::vector<Value>{r(0), r(1)});
    CHECK_THROWS_AS(Algebra::std_mv().elements(), DomainError);
  }

  TEST_CASE("finite table validation") {
    CHECK(validate_finite_algebra(mv_tables(3)).valid());
    FiniteTables bad = mv_tables(3);
    bad.residuum[1][1] = 0;
    ValidationReport rep = validate_finite_algebra(bad);
    REQUIRE_FALSE(rep.valid());
    bool residuation = false;
    for (const auto& v : rep.violations) {
      CHECK(v.law == "residuation");
      if (v.args == std::vector<std::size_t>{1, 1, 1}) residuation = true;
    }
    CHECK(residuation);
    CHECK(rep.violations.size() == 2);
    CHECK_THROWS_AS(Algebra::finite(bad), DomainError);

    FiniteTables trivial;
    trivial.size = 1;
    trivial.meet = trivial.join = trivial.times = trivial.residuum = {{0}};
    CHECK(validate_finite_algebra(trivial).valid());

    FiniteTables ragged = mv_tables(2);
    ragged.meet[0].pop_back();
    CHECK_THROWS_AS(validate_finite_algebra(ragged), DomainError);
  }

  TEST_CASE("a table algebra reproduces MV_4") {
    Algebra t = Algebra::finite(mv_tables(4));
    CHECK(t.times(Value::fin(2), Value::fin(2)) == Value::fin(1));
    CHECK(t.implies(Value::fin(3), Value::fin(1)) == Value::fin(1));
    CHECK(t.power(Value::fin(2), 5) == Value::fin(0));
    CHECK(t.leq(Value::fin(1), Value::fin(2)));
  }

  TEST_CASE("property: residuation and monoid laws on MV_n, exhaustively") {
    for (std::size_t n = 2; n <= 5; ++n) {
      Algebra a = Algebra::mv(n);
      auto els = a.elements();
      for (const auto& x : els)
        for (const auto& y : els) {
          CHECK(a.times(x, y) == a.times(y, x));
          CHECK(a.times(x, a.one()) == x);
          for (const auto& z : els) {
            CHECK(a.leq(a.times(x, y), z) == a.leq(x, a.implies(y, z)));
            CHECK(a.times(a.times(x, y), z) == a.times(x, a.times(y, z)));
          }
        }
    }
  }

  TEST_CASE("property: residuation and monoid laws on random triples") {
    Rng rng(21);
    for (const auto& a : infinite_algebras()) {
      for (int i = 0; i < 1000; ++i) {
        Value x = testing::random_value(rng, a), y = testing::random_value(rng, a), z = testing::random_value(rng, a);
        CHECK(a.leq(a.times(x, y), z) == a.leq(x, a.implies(y, z)));
        CHECK(a.times(x, y) == a.times(y, x));
        CHECK(a.times(x, a.one()) == x);
        CHECK(a.times(a.times(x, y), z) == a.times(x, a.times(y, z)));
        CHECK(a.meet(x, a.join(x, y)) == x);
        CHECK(a.join(x, a.meet(x, y)) == x);
      }
    }
  }

  TEST_CASE("property: the power chain is not n-contractive") {
    Algebra e = Algebra::exp_chain();
    Rng rng(22);
    for (int i = 0; i < 100; ++i) {
      Value a = Value::pow(testing::random_unit_rational(rng) + Rational(1, 100));
      for (unsigned long n = 1; n <= 20; ++n) CHECK(e.power(a, n + 1) != e.power(a, n));
    }
  }

  TEST_CASE("property: MV_n is (n-1)-contractive") {
    for (std::size_t n = 2; n <= 8; ++n) {
      Algebra a = Algebra::mv(n);
      for (const auto& x : a.elements()) CHECK(a.power(x, n) == a.power(x, n - 1));
    }
  }

  TEST_CASE("property: std-mv powers reach 0 from ceil(1/(1-a)) on") {
    Algebra mv = Algebra::std_mv();
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
      Rational a = testing::random_unit_rational(rng, 20);
      if (a == 1) continue;
      Rational inv = 1 / (1 - a);
      Natural n = inv.get_num() / inv.get_den();
      if (n * inv.get_den() != inv.get_num()) n += 1;
      CHECK(mv.power(a, n) == r(0));
      CHECK(mv.power(a, n + 7) == r(0));
    }
  }

  TEST_CASE("property: closed-form powers agree with repeated products") {
    Rng rng(24);
    std::vector<Algebra> algs = infinite_algebras();
    algs.push_back(Algebra::mv(6));
    algs.push_back(Algebra::finite(mv_tables(5)));
    for (const auto& a : algs) {
      for (int i = 0; i < 100; ++i) {
        Value x = testing::random_value(rng, a);
        Value acc = a.one();
        for (unsigned long n = 1; n <= 50; ++n) {
          acc = a.times(acc, x);
          REQUIRE(a.power(x, n) == acc);
        }
      }
    }
  }
}
