#include <doctest.h>

#include "mvml/decision.hpp"
#include "mvml/error.hpp"
#include "mvml/lp.hpp"
#include "support.hpp"

using namespace mvml;
using testing::Rng;

namespace {

Value r(long n, unsigned long d = 1) { return Value::rat(n, d); }

// Re-checks a failing verdict on its own witness model.
void check_witness(const Verdict& v, const FormulaSet& gamma, const Formula& phi) {
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness);
  REQUIRE(v.witness->model);
  const KripkeModel& m = *v.witness->model;
  CHECK(globally_satisfies(m, gamma).holds);
  Value val = evaluate(m, v.witness->world, phi);
  CHECK(val == v.witness->value);
  CHECK_FALSE(m.algebra().is_one(val));
}

std::vector<std::pair<FormulaSet, Formula>> propositional_battery() {
  std::vector<std::pair<FormulaSet, Formula>> out;
  for (const char* valid : {"~~p -> p", "(p -> q) \\/ (q -> p)", "(p -> q) -> ((q -> r) -> (p -> r))",
                            "(p * q) -> p", "(p * q) -> (q * p)", "((p * q) -> r) -> (p -> (q -> r))",
                            "(p -> (q -> r)) -> ((p * q) -> r)", "(p /\\ q) -> (q /\\ p)",
                            "(p /\\ q) -> (p * (p -> q))", "((p -> q) -> r) -> (((q -> p) -> r) -> r)", "0 -> p",
                            "p -> (q -> p)", "p \\/ q -> q \\/ p", "((p -> q) -> q) -> ((q -> p) -> p)"})
    out.push_back({{}, parse(valid)});
  for (const char* invalid : {"p \\/ ~p", "p -> p * p", "p", "(p -> q) -> p", "~(p * ~p) -> p", "p <-> q",
                              "((p -> q) -> p) -> p", "(p -> q) \\/ (p -> r) \\/ q"})
    out.push_back({{}, parse(invalid)});
  out.push_back({{parse("p")}, parse("p * p")});
  out.push_back({{parse("p -> q"), parse("p")}, parse("q")});
  out.push_back({{parse("p \\/ q")}, parse("p")});
  out.push_back({{parse("p <-> ~p")}, parse("p")});
  out.push_back({{parse("p <-> ~p")}, parse("0")});
  out.push_back({{parse("p * p")}, parse("p")});
  out.push_back({{parse("p -> p * p"), parse("p \\/ q")}, parse("p \\/ (q * q)")});
  // Each refutable only in one regime of one connective.
  out.push_back({{parse("q")}, parse("(p /\\ q) \\/ ~p")});
  out.push_back({{parse("p")}, parse("(p /\\ q) \\/ ~q")});
  out.push_back({{parse("~q")}, parse("(p \\/ q) \\/ ~p")});
  out.push_back({{}, parse("(p * q) \\/ (~p -> q)")});
  return out;
}

}  // namespace

TEST_SUITE("lp") {
  TEST_CASE("small programs") {
    lp::Program p{2, {{{1, 1}, lp::Sense::Le, 4}, {{1, 3}, lp::Sense::Le, 6}}, {3, 2}};
    auto res = lp::maximize(p);
    REQUIRE(res.status == lp::Status::Optimal);
    CHECK(res.value == 12);

    lp::Program infeasible{1, {{{1}, lp::Sense::Ge, 2}, {{1}, lp::Sense::Le, 1}}, {1}};
    CHECK(lp::maximize(infeasible).status == lp::Status::Infeasible);

    lp::Program unbounded{2, {{{1, -1}, lp::Sense::Le, 1}}, {1, 0}};
    CHECK(lp::maximize(unbounded).status == lp::Status::Unbounded);

    lp::Program eq{3, {{{1, 1, 1}, lp::Sense::Eq, 1}, {{1, 1, 1}, lp::Sense::Eq, 1}, {{1, -1, 0}, lp::Sense::Ge, Rational(1, 3)}},
                   {0, 1, 1}};
    auto e = lp::maximize(eq);
    REQUIRE(e.status == lp::Status::Optimal);
    CHECK(e.value == Rational(2, 3));
  }

  TEST_CASE("property: optimum equals the best vertex of random bounded programs") {
    Rng rng(41);
    for (int i = 0; i < 150; ++i) {
      lp::Program p;
      p.num_vars = 1 + rng.below(3);
      auto coeff = [&] { return Rational(static_cast<long>(rng.below(7)) - 3); };
      for (std::size_t v = 0; v < p.num_vars; ++v) {
        std::vector<Rational> e(p.num_vars, 0);
        e[v] = 1;
        p.constraints.push_back({e, lp::Sense::Le, Rational(static_cast<unsigned long>(1 + rng.below(5)))});
      }
      std::size_t extra = rng.below(4);
      for (std::size_t c = 0; c < extra; ++c) {
        std::vector<Rational> row;
        for (std::size_t v = 0; v < p.num_vars; ++v) row.push_back(coeff());
        lp::Sense s = rng.chance(0.2) ? lp::Sense::Eq : rng.chance(0.5) ? lp::Sense::Le : lp::Sense::Ge;
        p.constraints.push_back({row, s, coeff()});
      }
      for (std::size_t v = 0; v < p.num_vars; ++v) p.objective.push_back(coeff());
      auto expected = testing::brute_force_lp(p);
      auto got = lp::maximize(p);
      if (!expected) {
        CHECK(got.status == lp::Status::Infeasible);
      } else {
        REQUIRE(got.status == lp::Status::Optimal);
        CHECK(got.value == *expected);
        Rational obj = 0;
        for (std::size_t v = 0; v < p.num_vars; ++v) obj += p.objective[v] * got.x[v];
        CHECK(obj == got.value);
      }
    }
  }
}

TEST_SUITE("decision") {
  TEST_CASE("Lukasiewicz consequence examples") {
    CHECK(luk_consequence({}, parse("~~p -> p")).holds);
    Verdict v = luk_consequence({}, parse("p -> p * p"));
    REQUIRE_FALSE(v.holds);
    CHECK(v.witness->model->value(0, "p") == r(1, 2));
    CHECK(v.witness->value == r(1, 2));
    CHECK(luk_consequence({parse("p")}, parse("p * p")).holds);
    Verdict lem = luk_consequence({}, parse("p \\/ ~p"));
    REQUIRE_FALSE(lem.holds);
    CHECK(lem.witness->model->value(0, "p") == r(1, 2));
    CHECK_THROWS_AS(luk_consequence({}, parse("[]p")), DomainError);
  }

  TEST_CASE("Lukasiewicz consequence on the battery, with witnesses re-verified") {
    for (const auto& [gamma, phi] : propositional_battery()) {
      Verdict v = luk_consequence(gamma, phi);
      if (!v.holds) check_witness(v, gamma, phi);
      auto grid = testing::grid_refutation(gamma, phi, 12);
      if (grid) CHECK_FALSE(v.holds);
      if (!v.holds) CHECK(grid.has_value());
    }
  }

  TEST_CASE("constants and degenerate inputs") {
    CHECK(luk_consequence({}, parse("1")).holds);
    CHECK_FALSE(luk_consequence({}, parse("0")).holds);
    CHECK(luk_consequence({parse("0")}, parse("p")).holds);
    CHECK(luk_consequence({parse("p"), parse("~p")}, parse("q")).holds);
  }

  TEST_CASE("the branch guard raises a resource limit") {
    LukOptions opts;
    opts.max_branches = 16;
    Formula f = parse("((p1 -> p2) \\/ (p2 -> p1)) /\\ ((p3 -> p4) \\/ (p4 -> p3))");
    CHECK_THROWS_AS(luk_consequence({}, f, opts), ResourceLimit);
    CHECK(luk_consequence({}, f).holds);
  }

  TEST_CASE("property: random propositional instances agree with the grid oracle") {
    Rng rng(42);
    const std::vector<Op> ops{Op::Zero, Op::One, Op::Var, Op::And, Op::Or, Op::Times, Op::Implies};
    for (int i = 0; i < 120; ++i) {
      FormulaSet gamma;
      if (rng.chance(0.5)) gamma.insert(testing::random_formula(rng, 2, {"p", "q"}, ops));
      Formula phi = testing::random_formula(rng, 3, {"p", "q"}, ops);
      Verdict v = luk_consequence(gamma, phi);
      if (!v.holds) check_witness(v, gamma, phi);
      // Refutations on the grid are refutations in [0,1].
      if (testing::grid_refutation(gamma, phi, 6)) CHECK_FALSE(v.holds);
    }
  }

  TEST_CASE("property: validity over [0,1] transfers to every MV_n") {
    for (const auto& [gamma, phi] : propositional_battery()) {
      bool holds = luk_consequence(gamma, phi).holds;
      for (std::size_t n = 2; n <= 6; ++n) {
        Verdict f = finite_consequence(Algebra::mv(n), gamma, phi);
        if (holds) CHECK(f.holds);
        if (!f.holds) {
          CHECK_FALSE(holds);
          check_witness(f, gamma, phi);
        }
      }
    }
  }

  TEST_CASE("mutation: disabling any regime changes some verdict") {
    auto battery = propositional_battery();
    std::vector<bool> baseline;
    for (const auto& [gamma, phi] : battery) baseline.push_back(luk_consequence(gamma, phi).holds);
    for (Op op : {Op::And, Op::Or, Op::Times, Op::Implies}) {
      for (int regime : {0, 1}) {
        LukOptions opts;
        opts.disabled_op = op;
        opts.disabled_regime = regime;
        bool changed = false;
        for (std::size_t i = 0; i < battery.size(); ++i) {
          try {
            Verdict v = luk_consequence(battery[i].first, battery[i].second, opts);
            if (v.holds != baseline[i]) changed = true;
          } catch (const std::logic_error&) {
            changed = true;  // the witness no longer re-verifies
          }
        }
        CHECK_MESSAGE(changed, "regime ", regime, " of op ", static_cast<int>(op));
      }
    }
  }

  TEST_CASE("finite consequence") {
    Verdict v = finite_consequence(Algebra::mv(3), {}, parse("p \\/ ~p"));
    REQUIRE_FALSE(v.holds);
    CHECK(v.witness->model->value(0, "p") == r(1, 2));
    CHECK(finite_consequence(Algebra::mv(2), {}, parse("p \\/ ~p")).holds);
    CHECK(finite_consequence(Algebra::mv(3), {parse("p <-> q")}, parse("q <-> p")).holds);
    CHECK_THROWS_AS(finite_consequence(Algebra::std_mv(), {}, parse("p")), DomainError);
    CHECK_THROWS_AS(finite_consequence(Algebra::mv(3), {}, parse("[]p")), DomainError);
    FiniteOptions small;
    small.max_valuations = 8;
    CHECK_THROWS_AS(finite_consequence(Algebra::mv(3), {}, parse("p \\/ q"), small), ResourceLimit);
    std::string text = "p0";
    for (int i = 1; i < 16; ++i) text += " \\/ p" + std::to_string(i);
    CHECK_THROWS_AS(finite_consequence(Algebra::mv(3), {}, parse(text)), ResourceLimit);
    CHECK(finite_consequence(Algebra::finite(mv_tables(3)), {}, parse("~~p -> p")).holds);
  }

  TEST_CASE("frame translation") {
    KripkeFrame fr({"w1", "w2"}, {{0, 1}});
    FrameTranslation t = translate_on_frame(fr, {parse("[]p")}, parse("p"));
    const Formula bp = parse("[]p");
    Formula x1 = Formula::var(t.name_of(bp, 0)), x2 = Formula::var(t.name_of(bp, 1));
    Formula p1 = Formula::var(t.name_of(parse("p"), 0)), p2 = Formula::var(t.name_of(parse("p"), 1));
    CHECK(t.premises == FormulaSet{x1, x2});
    CHECK(t.deltas[0] == FormulaSet{Formula::equiv(x1, p2)});
    CHECK(t.deltas[1] == FormulaSet{Formula::equiv(x2, Formula::one())});
    CHECK(t.conclusion == Formula::conj(p1, p2));
    for (const auto& [name, entry] : t.legend) CHECK(t.name_of(entry.source, entry.world) == name);
    CHECK(t.legend.size() == 4);

    FrameTranslation d = translate_on_frame(KripkeFrame::numbered(1, {}), {}, parse("<>1"));
    Formula x = Formula::var(d.name_of(parse("<>1"), 0));
    CHECK(d.conclusion == x);
    CHECK(d.deltas[0] == FormulaSet{Formula::equiv(x, Formula::zero())});
  }

  TEST_CASE("fresh names avoid source variables") {
    FrameTranslation t = translate_on_frame(KripkeFrame::numbered(1, {}), {}, parse("p__0 -> p"));
    std::set<std::string> names;
    for (const auto& [name, entry] : t.legend) names.insert(name);
    CHECK(names.size() == 2);
    CHECK(names.count("p__0") == 0);
    CHECK(names.count("p") == 0);
  }

  TEST_CASE("decide on a frame") {
    KripkeFrame fr({"w1", "w2"}, {{0, 1}});
    Verdict v = decide_on_frame(fr, {parse("[]p")}, parse("p"), Algebra::std_mv());
    check_witness(v, {parse("[]p")}, parse("p"));
    CHECK(v.witness->model->value(0, "p") == r(0));
    CHECK(v.witness->model->value(1, "p") == r(1));
    CHECK(decide_on_frame(fr, {parse("p")}, parse("[]p"), Algebra::std_mv()).holds);
    CHECK(decide_on_frame(KripkeFrame::numbered(1, {}), {parse("<>1")}, parse("0"), Algebra::std_mv()).holds);
    CHECK_THROWS_AS(decide_on_frame(fr, {}, parse("p"), Algebra::exp_chain()), DomainError);
    CHECK_THROWS_AS(decide_on_frame(fr, {}, parse("p"), Algebra::std_product()), DomainError);
    CHECK_THROWS_AS(decide_on_frame(fr, {}, parse("p"), Algebra::std_godel()), DomainError);
  }

  TEST_CASE("decide on a frame over finite algebras") {
    KripkeFrame loop = KripkeFrame::numbered(1, {{0, 0}});
    CHECK(decide_on_frame(loop, {}, parse("[]p -> p"), Algebra::mv(3)).holds);
    Verdict v = decide_on_frame(KripkeFrame::numbered(1, {}), {}, parse("[]p -> p"), Algebra::mv(3));
    check_witness(v, {}, parse("[]p -> p"));
    CHECK(decide_on_frame(loop, {}, parse("[]p -> p"), Algebra::finite(mv_tables(4))).holds);
  }

  TEST_CASE("property: frame decisions agree with exhaustive MV_3 model search") {
    Rng rng(43);
    const std::vector<std::string> vars{"p", "q"};
    for (int i = 0; i < 25; ++i) {
      KripkeFrame fr = testing::random_frame(rng, 1 + rng.below(2), 0.5);
      FormulaSet gamma;
      if (rng.chance(0.6)) gamma.insert(testing::random_formula(rng, 2, vars));
      Formula phi = testing::random_formula(rng, 3, vars);
      Verdict v = decide_on_frame(fr, gamma, phi, Algebra::mv(3));
      bool refuted = false;
      const std::size_t cells = fr.size() * vars.size();
      for (std::size_t code = 0; code < static_cast<std::size_t>(std::pow(3, cells)) && !refuted; ++code) {
        std::map<std::string, std::vector<Value>> cols;
        std::size_t c = code;
        for (const auto& var : vars)
          for (std::size_t w = 0; w < fr.size(); ++w) {
            cols[var].push_back(r(static_cast<long>(c % 3), 2));
            c /= 3;
          }
        KripkeModel m = KripkeModel::from_columns(fr, Algebra::mv(3), cols);
        refuted = !consequence_witness(m, gamma, phi).holds;
      }
      CHECK(v.holds == !refuted);
      if (!v.holds) check_witness(v, gamma, phi);
    }
  }

  TEST_CASE("cardinality decision") {
    Verdict v = decide_cardinality(1, {}, parse("[]p -> p"), Algebra::std_mv());
    check_witness(v, {}, parse("[]p -> p"));
    CHECK(v.witness->model->frame().edges().empty());
    CHECK(decide_cardinality(1, {}, parse("p -> p"), Algebra::std_mv()).holds);
    CHECK(decide_cardinality(2, {parse("p")}, parse("[]p"), Algebra::std_mv()).holds);
    CHECK_THROWS_AS(decide_cardinality(4, {}, parse("p"), Algebra::std_mv()), ResourceLimit);
    CHECK_THROWS_AS(decide_cardinality(0, {}, parse("p"), Algebra::std_mv()), DomainError);
    CHECK(frame_from_mask(2, 0b0110).edges() == std::vector<Edge>{{0, 1}, {1, 0}});
  }

  TEST_CASE("parallel cardinality search reports the same least failing frame") {
    FormulaSet gamma{parse("[]p -> p")};
    Formula phi = parse("[][]p -> []p");
    Verdict one = decide_cardinality(2, gamma, phi, Algebra::mv(3));
    CardinalityOptions opts;
    opts.jobs = 3;
    Verdict three = decide_cardinality(2, gamma, phi, Algebra::mv(3), opts);
    REQUIRE(one.holds == three.holds);
    if (!one.holds) {
      CHECK(one.witness->model->frame() == three.witness->model->frame());
      CHECK(*one.witness->model == *three.witness->model);
    }
  }

  TEST_CASE("co-enumeration") {
    auto lem = coenumerate_nonconsequences({{{}, parse("p \\/ ~p")}}, 2, Algebra::std_mv());
    REQUIRE(lem.size() == 1);
    CHECK(lem[0].cardinality == 1);
    CHECK(lem[0].verdict.witness->model->size() == 1);

    CHECK(coenumerate_nonconsequences({{{parse("p")}, parse("p")}}, 5, Algebra::std_mv()).empty());

    auto two = coenumerate_nonconsequences({{{}, parse("[]p -> p")}, {{parse("p")}, parse("[]p")}}, 3, Algebra::std_mv());
    REQUIRE(two.size() == 1);
    CHECK(two[0].pair == 0);
    CHECK(two[0].stage == 1);
  }

  TEST_CASE("co-enumeration stages follow the dovetailing order") {
    // The second pair needs two worlds: stage 2 is the first to store it and to try cardinality 2.
    std::vector<ConsequencePair> pairs{{{parse("p")}, parse("p")}, {{parse("[]p -> p")}, parse("[][]p -> []p")}};
    auto out = coenumerate_nonconsequences(pairs, 3, Algebra::mv(3));
    for (const auto& e : out) {
      CHECK(e.stage >= e.pair + 1);
      CHECK(e.stage >= e.cardinality);
      check_witness(e.verdict, pairs[e.pair].gamma, pairs[e.pair].phi);
    }
  }
}
