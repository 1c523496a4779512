#include <random>

#include "../support/oracle.hpp"
#include "doctest.h"
#include "sstt/surface.hpp"
#include "sstt/tope.hpp"

using namespace sstt;
using namespace sstt::tope;

namespace {

Verdict q(const std::string& s) { return entails(parse_sequent(s)); }

Cube I() { return Cube::interval(); }
Cube II() { return Cube::product(I(), I()); }

}  // namespace

TEST_CASE("normalize_cube pushes projections and eta-expands") {
  CubeContext ctx{{"x", I()}, {"y", I()}, {"z", I()}, {"p", II()}};
  CHECK(to_string(normalize_cube(ctx, fst(pair(var("x"), var("y"))))) == "x");
  CHECK(to_string(normalize_cube(ctx, var("p"))) == "(fst p, snd p)");
  CHECK(to_string(normalize_cube(ctx, fst(snd(pair(var("x"), pair(var("y"), var("z"))))))) == "y");
  CHECK_THROWS_AS(normalize_cube(ctx, var("w")), TopeError);
  CHECK_THROWS_AS(normalize_cube(ctx, fst(var("x"))), TopeError);
}

TEST_CASE("entailment on the interval") {
  CHECK(q("x y | x <= y /\\ y <= x |- x === y").entailed);
  CHECK(q("x | TOP |- 0 <= x").entailed);
  CHECK(q("x | TOP |- x <= 1").entailed);
  CHECK(q("| 0 === 1 |- BOT").entailed);
  CHECK(q("x y | TOP |- x <= y \\/ y <= x").entailed);
  CHECK(q("t1 t2 | t1 === 1 \\/ t2 === 0 |- t2 <= t1").entailed);
  CHECK(q("x y z | x <= y /\\ y <= z |- x <= z").entailed);
  CHECK_FALSE(q("|- 0 === 1").entailed);
}

TEST_CASE("non-entailment yields a falsifying weak order") {
  auto v = q("x y | TOP |- x <= y");
  REQUIRE_FALSE(v.entailed);
  REQUIRE(v.counter_model);
  CHECK(v.counter_model->str() == "0 = y < x = 1");
  CubeContext ctx{{"x", I()}, {"y", I()}};
  CHECK_FALSE(evaluate(ctx, le(var("x"), var("y")), model_of(*v.counter_model)));
}

TEST_CASE("product variables") {
  CHECK(q("(p : 2 * 2) | p === (0, 1) |- snd p === 1").entailed);
  CHECK(q("(p : 2 * 2) | fst p === 1 /\\ snd p === 0 |- p === (1, 0)").entailed);
  CHECK_FALSE(q("(p : 2 * 2) | fst p === 1 |- p === (1, 0)").entailed);
  CHECK(q("(u : 1) |- u === ()").entailed);
}

TEST_CASE("shape inclusions") {
  const auto& t = ShapeTable::builtin();
  auto S = [&](const char* n) { return t.find(n)->to_solver(); };
  CHECK(shape_included(S("BDelta1"), S("Delta1")).entailed);
  CHECK(shape_included(S("BDelta2"), S("Delta2")).entailed);
  CHECK(shape_included(S("Lambda21"), S("BDelta2")).entailed);
  CHECK(shape_included(S("Lambda21"), S("Delta2")).entailed);
  auto no = shape_included(S("Delta2"), S("Lambda21"));
  REQUIRE_FALSE(no.entailed);
  CHECK(no.counter_model->str() == "0 < t1 = t2 < 1");
  CHECK_FALSE(shape_included(S("BDelta2"), S("Lambda21")).entailed);
  CHECK_FALSE(shape_included(S("Delta2"), S("BDelta2")).entailed);
  CHECK_THROWS_AS(shape_included(S("Delta1"), S("Delta2")), TopeError);
}

TEST_CASE("eq_under") {
  CubeContext ctx{{"t", I()}, {"x", I()}, {"y", I()}};
  CHECK(eq_under(ctx, eq(var("t"), zero()), var("t"), zero()));
  CHECK(eq_under(ctx, top(), pair(var("x"), var("y")), pair(var("x"), var("y"))));
  CHECK_FALSE(eq_under(ctx, disj(eq(var("t"), zero()), eq(var("t"), one())), var("t"), zero()));
}

TEST_CASE("DNF cap") {
  // (a1 \/ b1) /\ ... /\ (a13 \/ b13) expands to 2^13 disjuncts
  CubeContext ctx{{"x", I()}, {"y", I()}};
  Tope h = top();
  for (int i = 0; i < 13; ++i) h = conj(h, disj(le(var("x"), var("y")), le(var("y"), var("x"))));
  CHECK_THROWS_AS(entails({ctx, h, bot()}), TopeError);
}

TEST_CASE("agrees with the valuation oracle on random small sequents") {
  std::mt19937 rng(7);
  CubeContext ctx{{"x", I()}, {"y", I()}, {"z", I()}};
  std::vector<Point> pts{zero(), one(), var("x"), var("y"), var("z")};
  auto atom = [&]() {
    auto a = pts[rng() % pts.size()], b = pts[rng() % pts.size()];
    return rng() % 2 ? le(a, b) : eq(a, b);
  };
  std::function<Tope(int)> gen = [&](int d) -> Tope {
    if (d == 0 || rng() % 3 == 0) return atom();
    return rng() % 2 ? conj(gen(d - 1), gen(d - 1)) : disj(gen(d - 1), gen(d - 1));
  };
  for (int i = 0; i < 2000; ++i) {
    Sequent s{ctx, gen(2), gen(2)};
    Verdict v = entails(s);
    REQUIRE(v.entailed == oracle::entails(s));
    if (!v.entailed) {
      Model m = model_of(*v.counter_model);
      CHECK(evaluate(ctx, s.hyp, m));
      CHECK_FALSE(evaluate(ctx, s.goal, m));
    }
  }
}
