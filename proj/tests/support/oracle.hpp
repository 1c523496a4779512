#pragma once

// Brute-force reference semantics for topes: evaluate under every valuation
// of the cube variables into the chain {0, 1/4, 1/2, 3/4, 1}. Independent of
// the solver's weak-order machinery.

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "sstt/tope.hpp"

namespace oracle {

using namespace sstt::tope;

struct Value {
  // leaf when kids empty and !unit
  double x = 0;
  bool unit = false;
  std::vector<Value> kids;  // size 2 for products
};

inline const std::vector<double>& chain() {
  static const std::vector<double> c{0.0, 0.25, 0.5, 0.75, 1.0};
  return c;
}

inline bool value_eq(const Value& a, const Value& b) {
  if (a.unit || b.unit) return true;
  if (a.kids.empty() != b.kids.empty()) throw std::logic_error("cube mismatch");
  if (a.kids.empty()) return a.x == b.x;
  return value_eq(a.kids[0], b.kids[0]) && value_eq(a.kids[1], b.kids[1]);
}

inline Value eval_point(const Point& p, const std::map<std::string, Value>& env) {
  using K = PointNode::Kind;
  switch (p->kind) {
    case K::Var: return env.at(p->name);
    case K::Zero: return Value{0.0};
    case K::One: return Value{1.0};
    case K::Star: return Value{0, true, {}};
    case K::Pair: return Value{0, false, {eval_point(p->a, env), eval_point(p->b, env)}};
    case K::Fst: return eval_point(p->a, env).kids.at(0);
    case K::Snd: return eval_point(p->a, env).kids.at(1);
  }
  throw std::logic_error("bad point");
}

inline bool eval_tope(const Tope& t, const std::map<std::string, Value>& env) {
  using K = TopeNode::Kind;
  switch (t->kind) {
    case K::Top: return true;
    case K::Bot: return false;
    case K::And: return eval_tope(t->l, env) && eval_tope(t->r, env);
    case K::Or: return eval_tope(t->l, env) || eval_tope(t->r, env);
    case K::Le: return eval_point(t->p, env).x <= eval_point(t->q, env).x;
    case K::Eq: return value_eq(eval_point(t->p, env), eval_point(t->q, env));
  }
  throw std::logic_error("bad tope");
}

/// Chain 0 < 1/(n+1) < ... < n/(n+1) < 1 with n interior points; n atoms
/// need n interior points to realize every weak order.
inline std::vector<double> chain_with(int interior) {
  std::vector<double> c;
  for (int i = 0; i <= interior + 1; ++i) c.push_back(static_cast<double>(i) / (interior + 1));
  return c;
}

inline void values_of(const Cube& c, std::vector<Value>& out, const std::vector<double>& ch) {
  switch (c.kind()) {
    case Cube::Kind::Unit: out.push_back(Value{0, true, {}}); return;
    case Cube::Kind::Interval:
      for (double x : ch) out.push_back(Value{x});
      return;
    case Cube::Kind::Product: {
      std::vector<Value> l, r;
      values_of(c.left(), l, ch);
      values_of(c.right(), r, ch);
      for (const auto& a : l)
        for (const auto& b : r) out.push_back(Value{0, false, {a, b}});
      return;
    }
  }
}

/// Calls f on every valuation; stops early when f returns false.
inline void for_each_valuation(const CubeContext& ctx, const std::function<bool(const std::map<std::string, Value>&)>& f,
                               const std::vector<double>& ch = chain()) {
  std::vector<std::vector<Value>> choices;
  for (const auto& [n, c] : ctx) {
    choices.emplace_back();
    values_of(c, choices.back(), ch);
  }
  std::map<std::string, Value> env;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == ctx.size()) return f(env);
    for (const auto& v : choices[i]) {
      env[ctx[i].first] = v;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  rec(0);
}

inline bool entails(const Sequent& s, const std::vector<double>& ch = chain()) {
  bool ok = true;
  for_each_valuation(
      s.ctx,
      [&](const auto& env) {
        if (eval_tope(s.hyp, env) && !eval_tope(s.goal, env)) ok = false;
        return ok;
      },
      ch);
  return ok;
}

}  // namespace oracle
