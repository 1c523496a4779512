#include <random>

#include "doctest.h"
#include "sstt/corpus.hpp"
#include "sstt/surface.hpp"

using namespace sstt;

using mk::universe;
using mk::var;

namespace {

const char* kPrelude =
    "def hom (A : U) (x y : A) : U :=\n"
    "  <{t : Delta1} -> A [t === 0 |-> x, t === 1 |-> y]>\n"
    "def hom2 (A : U) (x y z : A) (f : hom A x y) (g : hom A y z) (h : hom A x z) : U :=\n"
    "  <{(t1, t2) : Delta2} -> A [t2 === 0 |-> f t1, t1 === 1 |-> g t2, t1 === t2 |-> h t1]>\n"
    "def idarr (A : U) (x : A) : hom A x x := \\t. x\n";

struct Fixture {
  CorpusChecker cc{CheckOptions{}, Ledger{}};
  Fixture() {
    cc.check_source(kPrelude, "prelude.sstt");
    REQUIRE(cc.report().ok());
  }
  Expr P(const std::string& s) const { return resolve_shapes(parse_expr(s), cc.scope().shapes()); }
  // t : 2, A : U, x y z : A, f : hom A x y
  TriContext base() const {
    return TriContext()
        .with_cube("t", tope::Cube::interval())
        .with_var("A", universe())
        .with_var("x", var("A"))
        .with_var("y", var("A"))
        .with_var("z", var("A"))
        .with_var("f", P("hom A x y"));
  }
  // Returns the first diagnostic of `src` checked after the prelude.
  std::optional<Diagnostic> first_diag(const std::string& src) {
    std::size_t before = cc.report().diagnostics.size();
    cc.check_source(src, "input.sstt");
    if (cc.report().diagnostics.size() == before) return std::nullopt;
    return cc.report().diagnostics[before];
  }
};

}  // namespace

TEST_CASE("infer a variable") {
  Fixture fx;
  Checker c(fx.cc.scope());
  CHECK(alpha_equal(c.infer(fx.base(), var("x")), var("A")));
}

TEST_CASE("arrow endpoints") {
  Fixture fx;
  Checker c(fx.cc.scope());
  auto ctx = fx.base();
  CHECK(alpha_equal(c.infer(ctx, fx.P("f 0")), var("A")));
  CHECK(c.equal(ctx, var("A"), fx.P("f 0"), var("x")));
  CHECK(c.equal(ctx, var("A"), fx.P("f 1"), var("y")));
  CHECK_FALSE(c.equal(ctx, var("A"), fx.P("f 0"), var("y")));
  CHECK_FALSE(c.equal(ctx, var("A"), fx.P("f t"), var("x")));
}

TEST_CASE("pair inference substitutes into the second component") {
  Fixture fx;
  Checker c(fx.cc.scope());
  auto ctx = fx.base();
  Expr ann = fx.P("((x, \\s. x) : (Sigma (a : A), hom A a a))");
  Expr ty = c.infer(ctx, ann);
  CHECK(c.equal(ctx, universe(), ty, fx.P("Sigma (a : A), hom A a a")));
  Expr snd_ty = c.infer(ctx, mk::snd(ann));
  CHECK(c.equal(ctx, universe(), snd_ty, fx.P("hom A x x")));
}

TEST_CASE("identity arrow checks, constant arrow between distinct points fails at 0") {
  Fixture fx;
  Checker c(fx.cc.scope());
  auto ctx = fx.base();
  CHECK_NOTHROW(c.check(ctx, fx.P("\\s. x"), fx.P("hom A x x")));
  try {
    c.check(ctx, fx.P("\\s. y"), fx.P("hom A x y"));
    FAIL("expected a boundary failure");
  } catch (const CheckError& e) {
    CHECK(e.diag().kind == DiagKind::BoundaryMismatch);
    bool names_branch = false;
    for (const auto& line : e.diag().context) names_branch |= line.find("=== 0") != std::string::npos;
    names_branch |= e.diag().message.find("=== 0") != std::string::npos;
    CHECK(names_branch);
  }
}

TEST_CASE("triangle with a mismatched edge names the failing boundary branch") {
  Fixture fx;
  auto d = fx.first_diag(
      "def bad (A : U) (x y : A) (f : hom A x y) : hom2 A x y y f (idarr A y) f :=\n"
      "  \\(t1, t2). f t2\n");
  REQUIRE(d);
  CHECK(d->kind == DiagKind::BoundaryMismatch);
  CHECK(d->decl == "bad");
  bool mentions = d->message.find("t2 === 0") != std::string::npos;
  for (const auto& line : d->context) mentions |= line.find("t2 === 0") != std::string::npos;
  CHECK(mentions);
}

TEST_CASE("equality under tope hypotheses") {
  Fixture fx;
  Checker c(fx.cc.scope());
  auto ctx = fx.base();
  auto at0 = ctx.with_hyp(fx.P("t === 0"));
  CHECK(c.equal(at0, var("A"), fx.P("f t"), fx.P("f 0")));
  CHECK(c.equal(at0, var("A"), fx.P("f t"), var("x")));
  CHECK_FALSE(c.equal(ctx, var("A"), fx.P("f t"), fx.P("f 0")));

  auto absurd = ctx.with_hyp(fx.P("0 === 1"));
  CHECK(c.equal(absurd, var("A"), var("x"), var("y")));
  CHECK(c.equal(absurd, universe(), var("A"), fx.P("A -> A")));

  auto disj = ctx.with_hyp(fx.P("t === 0 \\/ t === 1"));
  CHECK_FALSE(c.equal(disj, var("A"), fx.P("f t"), var("x")));
}

TEST_CASE("beta and case reduction") {
  Fixture fx;
  Checker c(fx.cc.scope());
  auto ctx = fx.base();
  Expr redex = fx.P("((\\a. a) : A -> A) y");
  CHECK(c.equal(ctx, var("A"), redex, var("y")));
  CHECK(alpha_equal(c.whnf(ctx, redex), var("y")));

  auto at0 = ctx.with_hyp(fx.P("t === 0"));
  Expr cs = fx.P("cases { t === 0 => x | t === 1 => y }");
  CHECK(c.equal(at0, var("A"), cs, var("x")));
  CHECK(alpha_equal(c.whnf(at0, cs), var("x")));
  auto at1 = ctx.with_hyp(fx.P("t === 1"));
  CHECK(c.equal(at1, var("A"), cs, var("y")));
}

TEST_CASE("whnf unfolds definitions, ext applications and J on refl") {
  Fixture fx;
  Checker c(fx.cc.scope());
  auto ctx = fx.base();
  CHECK(alpha_equal(c.whnf(ctx, fx.P("idarr A x t")), var("x")));
  Expr j = fx.P("J A x (\\b p. A) z x refl");
  CHECK(alpha_equal(c.whnf(ctx, j), var("z")));
}

TEST_CASE("declaration checking") {
  Fixture fx;
  SUBCASE("ill-formed postulate type") {
    CorpusChecker cc(CheckOptions{}, Ledger::parse("ax\tbad type\n"));
    cc.check_source("postulate ax (A : U) : A A", "ax.sstt");
    REQUIRE(cc.report().diagnostics.size() == 1);
    CHECK(cc.report().diagnostics[0].kind == DiagKind::TypeMismatch);
  }
  SUBCASE("proof using an unchecked constant") {
    auto d = fx.first_diag("thm uses (A : U) (x : A) : Id A x x := later A x\n");
    REQUIRE(d);
    CHECK(d->kind == DiagKind::ScopeError);
  }
  SUBCASE("segal definition") {
    auto d = fx.first_diag(
        "def iscontr (A : U) : U := Sigma (c : A), (a : A) -> Id A c a\n"
        "def isSegal (A : U) : U := (x y z : A) -> (f : hom A x y) -> (g : hom A y z) ->\n"
        "  iscontr (Sigma (h : hom A x z), hom2 A x y z f g h)\n");
    CHECK_FALSE(d);
  }
}

TEST_CASE("checking the same module twice is deterministic") {
  Fixture a, b;
  const char* src = "def bad (A : U) (x y : A) : hom A x y := \\t. x\n";
  auto da = a.first_diag(src), db = b.first_diag(src);
  REQUIRE(da);
  REQUIRE(db);
  CHECK(da->message == db->message);
  CHECK(da->context == db->context);
  CHECK(report_json(a.cc.report()) == report_json(b.cc.report()));
}

TEST_CASE("substitution") {
  Fixture fx;
  SUBCASE("beta via substitution returns the argument") {
    CHECK(alpha_equal(subst(var("x"), "x", var("y")), var("y")));
  }
  SUBCASE("shadowing binder leaves the body unchanged") {
    Expr e = fx.P("\\x. x");
    CHECK(alpha_equal(subst(e, "x", var("y")), e));
  }
  SUBCASE("capture is avoided") {
    Expr e = fx.P("\\y. x");
    Expr r = subst(e, "x", var("y"));
    CHECK_FALSE(alpha_equal(r, fx.P("\\y. y")));
    CHECK(alpha_equal(r, fx.P("\\w. y")));
  }
  SUBCASE("cube substitution into an arrow application") {
    Checker c(fx.cc.scope());
    Expr e = subst(fx.P("f t"), "t", mk::zero());
    CHECK(c.equal(fx.base(), var("A"), e, var("x")));
    CHECK(alpha_equal(subst(fx.P("x"), "t", mk::one()), var("x")));
  }
}

namespace {

// Random terms over free variables x, y, a, b and binders drawn from the
// same names, so shadowing and capture both occur.
Expr gen_term(std::mt19937& rng, int depth) {
  static const char* names[] = {"x", "y", "a", "b"};
  auto pick = [&] { return std::string(names[rng() % 4]); };
  if (depth == 0) return var(pick());
  switch (rng() % 6) {
    case 0: return mk::lam(pick(), gen_term(rng, depth - 1));
    case 1: return mk::app(gen_term(rng, depth - 1), gen_term(rng, depth - 1));
    case 2: return mk::pair(gen_term(rng, depth - 1), gen_term(rng, depth - 1));
    case 3: return mk::pi(pick(), gen_term(rng, depth - 1), gen_term(rng, depth - 1));
    case 4: return mk::sigma(pick(), gen_term(rng, depth - 1), gen_term(rng, depth - 1));
    default: return mk::app(gen_term(rng, depth - 1), mk::zero());
  }
}

}  // namespace

TEST_CASE("iterated substitution agrees with simultaneous substitution") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Expr e = gen_term(rng, 4);
    // values mention a and b but not x or y, so the two orders agree
    Expr u = mk::app(var("a"), var("b"));
    Expr v = mk::lam("a", mk::app(var("a"), var("b")));
    Expr iterated = subst(subst(e, "x", u), "y", v);
    Expr simultaneous = substitute(e, Subst{{"x", u}, {"y", v}});
    CAPTURE(print_expr(e));
    CHECK(alpha_equal(iterated, simultaneous));
    // independent substitutions commute
    CHECK(alpha_equal(subst(subst(e, "y", v), "x", u), simultaneous));
  }
}
