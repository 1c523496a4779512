#include <bitset>
#include <functional>
#include <random>
#include <sstream>

#include "../support/oracle.hpp"
#include "acceptance.hpp"
#include "sstt/shapes.hpp"

namespace acceptance {

using namespace sstt::tope;

namespace {

// Valuations of at most three interval variables over the five-point chain.
using Mask = std::bitset<125>;

struct Atom {
  Tope tope;
  Mask mask;
};

struct Slice {
  CubeContext ctx;
  std::vector<Atom> atoms;
  Mask all;
};

// Atoms `p <= q` for ordered and `p === q` for unordered pairs of distinct
// terms among 0, 1 and the variables, excluding constant-only atoms.
Slice make_slice(int n) {
  static const char* names[] = {"x", "y", "z"};
  Slice s;
  std::vector<Point> terms{zero(), one()};
  for (int i = 0; i < n; ++i) {
    s.ctx.emplace_back(names[i], Cube::interval());
    terms.push_back(var(names[i]));
  }
  std::vector<Tope> topes;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j || (i < 2 && j < 2)) continue;
      topes.push_back(le(terms[i], terms[j]));
      if (i < j) topes.push_back(eq(terms[i], terms[j]));
    }
  for (const auto& t : topes) s.atoms.push_back({t, {}});
  std::size_t k = 0;
  oracle::for_each_valuation(s.ctx, [&](const auto& env) {
    for (auto& a : s.atoms) a.mask[k] = oracle::eval_tope(a.tope, env);
    s.all[k] = true;
    ++k;
    return true;
  });
  return s;
}

struct Template {
  int arity;
  std::function<Tope(const std::vector<const Atom*>&)> hyp, goal;
  std::function<Mask(const std::vector<const Atom*>&, const Mask&)> hyp_mask, goal_mask;
};

std::vector<Template> templates() {
  using V = const std::vector<const Atom*>&;
  return {
      {1, [](V) { return top(); }, [](V a) { return a[0]->tope; }, [](V, const Mask& all) { return all; },
       [](V a, const Mask&) { return a[0]->mask; }},
      {2, [](V a) { return a[0]->tope; }, [](V a) { return a[1]->tope; }, [](V a, const Mask&) { return a[0]->mask; },
       [](V a, const Mask&) { return a[1]->mask; }},
      {3, [](V a) { return conj(a[0]->tope, a[1]->tope); }, [](V a) { return a[2]->tope; },
       [](V a, const Mask&) { return a[0]->mask & a[1]->mask; }, [](V a, const Mask&) { return a[2]->mask; }},
      {3, [](V a) { return disj(a[0]->tope, a[1]->tope); }, [](V a) { return a[2]->tope; },
       [](V a, const Mask&) { return a[0]->mask | a[1]->mask; }, [](V a, const Mask&) { return a[2]->mask; }},
      {3, [](V a) { return a[0]->tope; }, [](V a) { return disj(a[1]->tope, a[2]->tope); },
       [](V a, const Mask&) { return a[0]->mask; }, [](V a, const Mask&) { return a[1]->mask | a[2]->mask; }},
      {3, [](V a) { return a[0]->tope; }, [](V a) { return conj(a[1]->tope, a[2]->tope); },
       [](V a, const Mask&) { return a[0]->mask; }, [](V a, const Mask&) { return a[1]->mask & a[2]->mask; }},
      {4, [](V a) { return conj(conj(a[0]->tope, a[1]->tope), a[2]->tope); }, [](V a) { return a[3]->tope; },
       [](V a, const Mask&) { return a[0]->mask & a[1]->mask & a[2]->mask; },
       [](V a, const Mask&) { return a[3]->mask; }},
      {4, [](V a) { return conj(disj(a[0]->tope, a[1]->tope), a[2]->tope); }, [](V a) { return a[3]->tope; },
       [](V a, const Mask&) { return (a[0]->mask | a[1]->mask) & a[2]->mask; },
       [](V a, const Mask&) { return a[3]->mask; }},
      {4, [](V a) { return conj(a[0]->tope, a[1]->tope); }, [](V a) { return disj(a[2]->tope, a[3]->tope); },
       [](V a, const Mask&) { return a[0]->mask & a[1]->mask; },
       [](V a, const Mask&) { return a[2]->mask | a[3]->mask; }},
      {4, [](V a) { return disj(a[0]->tope, a[1]->tope); }, [](V a) { return conj(a[2]->tope, a[3]->tope); },
       [](V a, const Mask&) { return a[0]->mask | a[1]->mask; },
       [](V a, const Mask&) { return a[2]->mask & a[3]->mask; }},
  };
}

bool counter_model_valid(const Sequent& s, const Verdict& v) {
  if (v.entailed) return true;
  if (!v.counter_model) return false;
  Model m = model_of(*v.counter_model);
  return evaluate(s.ctx, s.hyp, m) && !evaluate(s.ctx, s.goal, m);
}

// Larger random sequents over three interval coordinates, either three
// interval variables or a square variable plus an interval variable.
Sequent random_sequent(std::mt19937& rng) {
  CubeContext ctx;
  std::vector<Point> pts{zero(), one()};
  bool square = rng() % 2;
  if (square) {
    ctx = {{"p", Cube::product(Cube::interval(), Cube::interval())}, {"y", Cube::interval()}};
    pts.push_back(fst(var("p")));
    pts.push_back(snd(var("p")));
    pts.push_back(var("y"));
  } else {
    ctx = {{"x", Cube::interval()}, {"y", Cube::interval()}, {"z", Cube::interval()}};
    for (const char* n : {"x", "y", "z"}) pts.push_back(var(n));
  }
  auto pick = [&] { return pts[rng() % pts.size()]; };
  auto atom = [&]() -> Tope {
    if (square && rng() % 6 == 0) return eq(var("p"), pair(pick(), pick()));
    return rng() % 3 ? le(pick(), pick()) : eq(pick(), pick());
  };
  std::function<Tope(int)> gen = [&](int d) -> Tope {
    if (d == 0 || rng() % 4 == 0) return atom();
    return rng() % 2 ? conj(gen(d - 1), gen(d - 1)) : disj(gen(d - 1), gen(d - 1));
  };
  return {ctx, gen(3), gen(3)};
}

}  // namespace

Outcome tope_oracle() {
  Stopwatch clock;
  long checked = 0, mismatches = 0, bad_models = 0;
  const auto tmpl = templates();
  for (int n = 1; n <= 3; ++n) {
    Slice slice = make_slice(n);
    const std::size_t na = slice.atoms.size();
    for (const auto& t : tmpl) {
      std::vector<std::size_t> idx(t.arity, 0);
      std::vector<const Atom*> a(t.arity);
      for (;;) {
        for (int i = 0; i < t.arity; ++i) a[i] = &slice.atoms[idx[i]];
        Sequent s{slice.ctx, t.hyp(a), t.goal(a)};
        Mask hyp = t.hyp_mask(a, slice.all), goal = t.goal_mask(a, slice.all);
        bool expected = (hyp & ~goal & slice.all).none();
        Verdict v = entails(s);
        ++checked;
        if (v.entailed != expected) ++mismatches;
        else if (!counter_model_valid(s, v)) ++bad_models;
        int i = t.arity - 1;
        while (i >= 0 && ++idx[i] == na) idx[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  long exhaustive = checked;
  std::mt19937 rng(20261016);
  for (int i = 0; i < kRandomSequents; ++i) {
    Sequent s = random_sequent(rng);
    Verdict v = entails(s);
    ++checked;
    if (v.entailed != oracle::entails(s)) ++mismatches;
    else if (!counter_model_valid(s, v)) ++bad_models;
  }
  double secs = clock.seconds();
  std::ostringstream os;
  os << exhaustive << " exhaustive + " << kRandomSequents << " random sequents, " << mismatches << " mismatch(es), "
     << bad_models << " invalid counter-model(s), " << secs << " s (budget " << kTopeBudgetSeconds << " s)";
  return {mismatches == 0 && bad_models == 0 && secs < kTopeBudgetSeconds, os.str()};
}

Outcome axiom_schemas() {
  long instances = 0, failures = 0;
  std::ostringstream os;
  auto expect = [&](const CubeContext& ctx, Tope hyp, Tope goal, const char* schema) {
    ++instances;
    Sequent s{ctx, hyp, goal};
    if (!entails(s).entailed) {
      if (failures++ == 0) os << "first failure: " << schema << " " << to_string(hyp) << " |- " << to_string(goal) << "; ";
    }
  };
  static const char* names[] = {"x", "y", "z"};
  for (int n = 1; n <= 3; ++n) {
    CubeContext ctx;
    std::vector<Point> pts{zero(), one()};
    for (int i = 0; i < n; ++i) {
      ctx.emplace_back(names[i], Cube::interval());
      pts.push_back(var(names[i]));
    }
    expect(ctx, eq(zero(), one()), bot(), "distinct endpoints");
    for (const auto& a : pts) {
      expect(ctx, top(), le(a, a), "reflexivity");
      expect(ctx, top(), le(zero(), a), "bottom");
      expect(ctx, top(), le(a, one()), "top");
      for (const auto& b : pts) {
        expect(ctx, conj(le(a, b), le(b, a)), eq(a, b), "antisymmetry");
        expect(ctx, top(), disj(le(a, b), le(b, a)), "totality");
        for (const auto& c : pts) {
          expect(ctx, conj(le(a, b), le(b, c)), le(a, c), "transitivity");
          expect(ctx, conj(eq(a, b), le(a, c)), le(b, c), "congruence");
          expect(ctx, conj(eq(a, b), le(c, a)), le(c, b), "congruence");
        }
      }
    }
  }

  const auto& table = sstt::ShapeTable::builtin();
  auto S = [&](const char* n) { return table.find(n)->to_solver(); };
  int shape_failures = 0;
  auto inclusion = [&](const char* sub, const char* sup, bool expected) {
    Shape a = S(sub), b = S(sup);
    Verdict v = shape_included(a, b);
    // independent check with the valuation oracle; the built-in shapes share binder names
    bool oracle_says = to_string(a.binder) == to_string(b.binder) &&
                       oracle::entails(Sequent{pattern_context(a.binder, a.cube), a.constraint, b.constraint});
    bool ok = v.entailed == expected && oracle_says == expected;
    if (!expected && ok) ok = v.counter_model && !v.counter_model->blocks.empty();
    if (!ok) {
      ++shape_failures;
      os << sub << (expected ? " in " : " not in ") << sup << " decided wrongly; ";
    }
  };
  inclusion("Lambda21", "BDelta2", true);
  inclusion("BDelta2", "Delta2", true);
  inclusion("Lambda21", "Delta2", true);
  inclusion("BDelta2", "Lambda21", false);
  inclusion("Delta2", "BDelta2", false);

  os << instances << " schema instances at 1-3 variables, " << failures << " failure(s); 5 shape inclusions, "
     << shape_failures << " wrong";
  return {failures == 0 && shape_failures == 0, os.str()};
}

}  // namespace acceptance
