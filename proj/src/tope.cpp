#include "sstt/tope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace sstt::tope {

Cube Cube::product(Cube l, Cube r) {
  Cube c(Kind::Product);
  c.parts_ = std::make_shared<const std::pair<Cube, Cube>>(std::move(l), std::move(r));
  return c;
}

bool Cube::operator==(const Cube& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ != Kind::Product) return true;
  return left() == o.left() && right() == o.right();
}

std::string Cube::str(bool unicode) const {
  switch (kind_) {
    case Kind::Unit: return "1";
    case Kind::Interval: return "2";
    case Kind::Product: {
      std::string l = left().str(unicode);
      if (left().kind() == Kind::Product) l = "(" + l + ")";
      return l + (unicode ? "×" : " * ") + right().str(unicode);
    }
  }
  return "?";
}

namespace {

Point make_point(PointNode::Kind k, std::string name = {}, Point a = {}, Point b = {}) {
  return std::make_shared<const PointNode>(PointNode{k, std::move(name), std::move(a), std::move(b)});
}

Tope make_tope(TopeNode::Kind k, Tope l = {}, Tope r = {}, Point p = {}, Point q = {}) {
  return std::make_shared<const TopeNode>(TopeNode{k, std::move(l), std::move(r), std::move(p), std::move(q)});
}

}  // namespace

Point var(std::string name) { return make_point(PointNode::Kind::Var, std::move(name)); }
Point zero() { return make_point(PointNode::Kind::Zero); }
Point one() { return make_point(PointNode::Kind::One); }
Point star() { return make_point(PointNode::Kind::Star); }
Point pair(Point a, Point b) { return make_point(PointNode::Kind::Pair, {}, std::move(a), std::move(b)); }
Point fst(Point p) { return make_point(PointNode::Kind::Fst, {}, std::move(p)); }
Point snd(Point p) { return make_point(PointNode::Kind::Snd, {}, std::move(p)); }

Tope top() { return make_tope(TopeNode::Kind::Top); }
Tope bot() { return make_tope(TopeNode::Kind::Bot); }
Tope conj(Tope l, Tope r) { return make_tope(TopeNode::Kind::And, std::move(l), std::move(r)); }
Tope disj(Tope l, Tope r) { return make_tope(TopeNode::Kind::Or, std::move(l), std::move(r)); }
Tope le(Point p, Point q) { return make_tope(TopeNode::Kind::Le, {}, {}, std::move(p), std::move(q)); }
Tope eq(Point p, Point q) { return make_tope(TopeNode::Kind::Eq, {}, {}, std::move(p), std::move(q)); }

std::string to_string(const Point& p) {
  using K = PointNode::Kind;
  switch (p->kind) {
    case K::Var: return p->name;
    case K::Zero: return "0";
    case K::One: return "1";
    case K::Star: return "()";
    case K::Pair: return "(" + to_string(p->a) + ", " + to_string(p->b) + ")";
    case K::Fst:
    case K::Snd: {
      std::string inner = to_string(p->a);
      if (p->a->kind == K::Fst || p->a->kind == K::Snd) inner = "(" + inner + ")";
      return (p->kind == K::Fst ? "fst " : "snd ") + inner;
    }
  }
  return "?";
}

namespace {

std::string tope_str(const Tope& t, int prec) {
  using K = TopeNode::Kind;
  switch (t->kind) {
    case K::Top: return "TOP";
    case K::Bot: return "BOT";
    case K::Le: return to_string(t->p) + " <= " + to_string(t->q);
    case K::Eq: return to_string(t->p) + " === " + to_string(t->q);
    case K::Or: {
      std::string s = tope_str(t->l, 0) + " \\/ " + tope_str(t->r, 0);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case K::And: {
      std::string s = tope_str(t->l, 1) + " /\\ " + tope_str(t->r, 1);
      return prec > 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

const Cube* lookup(const CubeContext& ctx, const std::string& name) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

Point eta(const Point& p, const Cube& c) {
  switch (c.kind()) {
    case Cube::Kind::Unit: return star();
    case Cube::Kind::Interval: return p;
    case Cube::Kind::Product: return pair(eta(fst(p), c.left()), eta(snd(p), c.right()));
  }
  return p;
}

std::pair<Point, Cube> normalize_typed(const CubeContext& ctx, const Point& p) {
  using K = PointNode::Kind;
  switch (p->kind) {
    case K::Var: {
      const Cube* c = lookup(ctx, p->name);
      if (!c) throw TopeError(TopeError::Kind::Scope, "unbound cube variable '" + p->name + "'");
      return {eta(p, *c), *c};
    }
    case K::Zero:
    case K::One: return {p, Cube::interval()};
    case K::Star: return {p, Cube::unit()};
    case K::Pair: {
      auto [a, ca] = normalize_typed(ctx, p->a);
      auto [b, cb] = normalize_typed(ctx, p->b);
      return {pair(a, b), Cube::product(ca, cb)};
    }
    case K::Fst:
    case K::Snd: {
      auto [a, ca] = normalize_typed(ctx, p->a);
      if (ca.kind() != Cube::Kind::Product)
        throw TopeError(TopeError::Kind::CubeMismatch,
                        "projection of '" + to_string(p->a) + "' which has cube " + ca.str());
      if (p->kind == K::Fst) return {a->a, ca.left()};
      return {a->b, ca.right()};
    }
  }
  throw TopeError(TopeError::Kind::CubeMismatch, "malformed point");
}

// Compiled formulas over numbered atoms.
struct Term {
  int atom = -1;  // -1: zero, -2: one
};

struct Formula {
  enum class Kind { Top, Bot, And, Or, Le, Eq } kind;
  std::vector<Formula> kids;
  Term a, b;
};

struct Literal {
  bool le;
  Term a, b;
};

using Conjunction = std::vector<Literal>;

class Compiler {
 public:
  explicit Compiler(const CubeContext& ctx) : ctx_(ctx) {}

  Formula compile(const Tope& t) {
    using K = TopeNode::Kind;
    switch (t->kind) {
      case K::Top: return {Formula::Kind::Top, {}, {}, {}};
      case K::Bot: return {Formula::Kind::Bot, {}, {}, {}};
      case K::And:
      case K::Or: {
        Formula f{t->kind == K::And ? Formula::Kind::And : Formula::Kind::Or, {}, {}, {}};
        f.kids.push_back(compile(t->l));
        f.kids.push_back(compile(t->r));
        return f;
      }
      case K::Le: {
        auto [p, cp] = normalize_typed(ctx_, t->p);
        auto [q, cq] = normalize_typed(ctx_, t->q);
        if (cp.kind() != Cube::Kind::Interval || cq.kind() != Cube::Kind::Interval)
          throw TopeError(TopeError::Kind::CubeMismatch,
                          "'<=' needs points of 2, got " + cp.str() + " and " + cq.str());
        return {Formula::Kind::Le, {}, term(p), term(q)};
      }
      case K::Eq: {
        auto [p, cp] = normalize_typed(ctx_, t->p);
        auto [q, cq] = normalize_typed(ctx_, t->q);
        if (cp != cq)
          throw TopeError(TopeError::Kind::CubeMismatch,
                          "'===' between cubes " + cp.str() + " and " + cq.str());
        Formula f{Formula::Kind::And, {}, {}, {}};
        componentwise(p, q, f.kids);
        if (f.kids.empty()) return {Formula::Kind::Top, {}, {}, {}};
        if (f.kids.size() == 1) return f.kids.front();
        return f;
      }
    }
    throw TopeError(TopeError::Kind::CubeMismatch, "malformed tope");
  }

  std::vector<std::string> atoms;

  int intern(const std::string& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int i = static_cast<int>(atoms.size());
    atoms.push_back(key);
    index_.emplace(key, i);
    return i;
  }

 private:
  Term term(const Point& p) {
    if (p->kind == PointNode::Kind::Zero) return {-1};
    if (p->kind == PointNode::Kind::One) return {-2};
    return {intern(to_string(p))};
  }

  void componentwise(const Point& p, const Point& q, std::vector<Formula>& out) {
    if (p->kind == PointNode::Kind::Star) return;
    if (p->kind == PointNode::Kind::Pair) {
      componentwise(p->a, q->a, out);
      componentwise(p->b, q->b, out);
      return;
    }
    out.push_back({Formula::Kind::Eq, {}, term(p), term(q)});
  }

  const CubeContext& ctx_;
  std::map<std::string, int> index_;
};

std::vector<Conjunction> dnf(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Top: return {Conjunction{}};
    case Formula::Kind::Bot: return {};
    case Formula::Kind::Le:
    case Formula::Kind::Eq: return {Conjunction{Literal{f.kind == Formula::Kind::Le, f.a, f.b}}};
    case Formula::Kind::Or: {
      std::vector<Conjunction> out;
      for (const auto& k : f.kids) {
        auto part = dnf(k);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > kMaxDisjuncts)
          throw TopeError(TopeError::Kind::TooLarge, "tope too large: DNF exceeds 4096 disjuncts");
      }
      return out;
    }
    case Formula::Kind::And: {
      std::vector<Conjunction> acc{Conjunction{}};
      for (const auto& k : f.kids) {
        auto part = dnf(k);
        if (acc.size() * part.size() > kMaxDisjuncts)
          throw TopeError(TopeError::Kind::TooLarge, "tope too large: DNF exceeds 4096 disjuncts");
        std::vector<Conjunction> next;
        next.reserve(acc.size() * part.size());
        for (const auto& a : acc)
          for (const auto& b : part) {
            Conjunction c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

// A model assigns each atom a level; 0 is the bottom endpoint and `top` the
// upper one. Interior levels used by a model are exactly 1..m.
struct LevelModel {
  std::vector<int> level;
  int distinct = 0;
};

int value(const Term& t, const std::vector<int>& level, int top) {
  if (t.atom == -1) return 0;
  if (t.atom == -2) return top;
  return level[static_cast<std::size_t>(t.atom)];
}

bool holds(const Literal& l, const std::vector<int>& level, int top) {
  int a = value(l.a, level, top), b = value(l.b, level, top);
  return l.le ? a <= b : a == b;
}

bool holds(const Formula& f, const std::vector<int>& level, int top) {
  switch (f.kind) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Bot: return false;
    case Formula::Kind::Le: return value(f.a, level, top) <= value(f.b, level, top);
    case Formula::Kind::Eq: return value(f.a, level, top) == value(f.b, level, top);
    case Formula::Kind::And:
      return std::all_of(f.kids.begin(), f.kids.end(), [&](const Formula& k) { return holds(k, level, top); });
    case Formula::Kind::Or:
      return std::any_of(f.kids.begin(), f.kids.end(), [&](const Formula& k) { return holds(k, level, top); });
  }
  return false;
}

std::vector<LevelModel> generate_models(int k) {
  // Assign each atom to bottom, top, or an interior group given as a
  // restricted growth string, then order the interior groups every way.
  std::vector<LevelModel> out;
  const int top = k + 1;
  std::vector<int> cls(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int groups) {
    if (i == k) {
      std::vector<int> perm(static_cast<std::size_t>(groups));
      std::iota(perm.begin(), perm.end(), 1);
      do {
        LevelModel m;
        m.level.resize(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) {
          int c = cls[static_cast<std::size_t>(a)];
          if (c == 0) {
            m.level[static_cast<std::size_t>(a)] = 0;
          } else if (c == -1) {
            m.level[static_cast<std::size_t>(a)] = top;
          } else {
            m.level[static_cast<std::size_t>(a)] = perm[static_cast<std::size_t>(c - 1)];
          }
        }
        m.distinct = groups;
        out.push_back(std::move(m));
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    cls[static_cast<std::size_t>(i)] = 0;
    rec(i + 1, groups);
    cls[static_cast<std::size_t>(i)] = -1;
    rec(i + 1, groups);
    for (int g = 1; g <= groups + 1; ++g) {
      cls[static_cast<std::size_t>(i)] = g;
      rec(i + 1, std::max(groups, g));
    }
  };
  rec(0, 0);
  std::stable_sort(out.begin(), out.end(), [](const LevelModel& a, const LevelModel& b) {
    if (a.distinct != b.distinct) return a.distinct < b.distinct;
    return a.level < b.level;
  });
  return out;
}

constexpr int kMaxAtoms = 8;

const std::vector<LevelModel>& models_for(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<LevelModel>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, generate_models(k)).first;
  return it->second;
}

CounterModel to_counter_model(const std::vector<std::string>& atoms, const std::vector<int>& level, int top) {
  std::map<int, std::vector<std::string>> byLevel;
  byLevel[0].push_back("0");
  for (std::size_t i = 0; i < atoms.size(); ++i) byLevel[level[i]].push_back(atoms[i]);
  CounterModel cm;
  for (auto& [lv, names] : byLevel) {
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      if (a == "0") return b != "0";
      if (b == "0") return false;
      return a < b;
    });
    if (lv == top) names.push_back("1");
    cm.blocks.push_back(names);
  }
  if (byLevel.find(top) == byLevel.end()) cm.blocks.push_back({"1"});
  return cm;
}

void collect_binder(const Point& binder, const Cube& cube, CubeContext& out) {
  if (binder->kind == PointNode::Kind::Var) {
    out.emplace_back(binder->name, cube);
    return;
  }
  if (binder->kind == PointNode::Kind::Pair && cube.kind() == Cube::Kind::Product) {
    collect_binder(binder->a, cube.left(), out);
    collect_binder(binder->b, cube.right(), out);
    return;
  }
  throw TopeError(TopeError::Kind::CubeMismatch,
                  "binder " + to_string(binder) + " does not match cube " + cube.str());
}

void binder_leaves(const Point& binder, std::vector<bool>& path,
                   std::vector<std::pair<std::string, std::vector<bool>>>& out) {
  if (binder->kind == PointNode::Kind::Var) {
    out.emplace_back(binder->name, path);
    return;
  }
  path.push_back(false);
  binder_leaves(binder->a, path, out);
  path.back() = true;
  binder_leaves(binder->b, path, out);
  path.pop_back();
}

}  // namespace

std::string to_string(const Tope& t) { return tope_str(t, 0); }

Cube infer_cube(const CubeContext& ctx, const Point& p) { return normalize_typed(ctx, p).second; }

Point normalize_cube(const CubeContext& ctx, const Point& p) { return normalize_typed(ctx, p).first; }

Point substitute(const Point& p, const std::string& name, const Point& value) {
  using K = PointNode::Kind;
  switch (p->kind) {
    case K::Var: return p->name == name ? value : p;
    case K::Zero:
    case K::One:
    case K::Star: return p;
    case K::Pair: return pair(substitute(p->a, name, value), substitute(p->b, name, value));
    case K::Fst: return fst(substitute(p->a, name, value));
    case K::Snd: return snd(substitute(p->a, name, value));
  }
  return p;
}

Tope substitute(const Tope& t, const std::string& name, const Point& value) {
  using K = TopeNode::Kind;
  switch (t->kind) {
    case K::Top:
    case K::Bot: return t;
    case K::And: return conj(substitute(t->l, name, value), substitute(t->r, name, value));
    case K::Or: return disj(substitute(t->l, name, value), substitute(t->r, name, value));
    case K::Le: return le(substitute(t->p, name, value), substitute(t->q, name, value));
    case K::Eq: return eq(substitute(t->p, name, value), substitute(t->q, name, value));
  }
  return t;
}

std::string CounterModel::str() const {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += " < ";
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) out += " = ";
      out += blocks[i][j];
    }
  }
  return out;
}

Verdict entails(const Sequent& s) {
  Compiler comp(s.ctx);
  Formula hyp = comp.compile(s.hyp);
  Formula goal = comp.compile(s.goal);
  auto disjuncts = dnf(hyp);
  if (disjuncts.empty()) return Verdict{true, std::nullopt};

  // Atoms are numbered in order of appearance; models are enumerated over
  // the sorted order so that counter-models are canonical.
  const int k = static_cast<int>(comp.atoms.size());
  if (k > kMaxAtoms)
    throw TopeError(TopeError::Kind::TooLarge,
                    "tope too large: " + std::to_string(k) + " distinct atoms (limit " +
                        std::to_string(kMaxAtoms) + ")");
  std::vector<std::size_t> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return comp.atoms[a] < comp.atoms[b]; });

  const int top = k + 1;
  std::vector<int> level(static_cast<std::size_t>(k));
  for (const auto& m : models_for(k)) {
    for (std::size_t i = 0; i < order.size(); ++i) level[order[i]] = m.level[i];
    bool sat = std::any_of(disjuncts.begin(), disjuncts.end(), [&](const Conjunction& c) {
      return std::all_of(c.begin(), c.end(), [&](const Literal& l) { return holds(l, level, top); });
    });
    if (!sat) continue;
    if (!holds(goal, level, top)) return Verdict{false, to_counter_model(comp.atoms, level, top)};
  }
  return Verdict{true, std::nullopt};
}

CubeContext pattern_context(const Point& binder, const Cube& cube) {
  CubeContext out;
  collect_binder(binder, cube, out);
  return out;
}

Point project(const Point& p, const std::vector<bool>& path) {
  Point cur = p;
  for (bool second : path) {
    if (cur->kind == PointNode::Kind::Pair)
      cur = second ? cur->b : cur->a;
    else
      cur = second ? snd(cur) : fst(cur);
  }
  return cur;
}

Verdict shape_included(const Shape& sub, const Shape& sup) {
  if (sub.cube != sup.cube)
    throw TopeError(TopeError::Kind::CubeMismatch,
                    "shapes live in different cubes: " + sub.cube.str() + " and " + sup.cube.str());
  CubeContext ctx = pattern_context(sub.binder, sub.cube);
  pattern_context(sup.binder, sup.cube);  // validates the binder

  // Express sup's binder variables through sub's binder.
  std::vector<std::pair<std::string, std::vector<bool>>> leaves;
  std::vector<bool> path;
  binder_leaves(sup.binder, path, leaves);
  std::vector<std::pair<std::string, Point>> renames;
  for (const auto& [name, p] : leaves) renames.emplace_back(name, project(sub.binder, p));

  // Go through placeholders so that overlapping names do not interfere.
  Tope goal = sup.constraint;
  for (std::size_t i = 0; i < renames.size(); ++i)
    goal = substitute(goal, renames[i].first, var("\x01" + std::to_string(i)));
  for (std::size_t i = 0; i < renames.size(); ++i)
    goal = substitute(goal, "\x01" + std::to_string(i), renames[i].second);
  return entails(Sequent{ctx, sub.constraint, goal});
}

bool eq_under(const CubeContext& ctx, const Tope& hyp, const Point& s, const Point& t) {
  return entails(Sequent{ctx, hyp, eq(s, t)}).entailed;
}

bool evaluate(const CubeContext& ctx, const Tope& t, const Model& m) {
  Compiler comp(ctx);
  for (const auto& a : m.atoms) comp.intern(a);
  Formula f = comp.compile(t);
  if (comp.atoms.size() != m.atoms.size())
    throw TopeError(TopeError::Kind::Scope, "model does not assign every atom of the tope");
  return holds(f, m.level, m.top);
}

Model model_of(const CounterModel& cm) {
  Model m;
  const int top = static_cast<int>(cm.blocks.size()) - 1;
  m.top = top;
  std::vector<std::pair<std::string, int>> assigned;
  for (int lv = 0; lv <= top; ++lv)
    for (const auto& name : cm.blocks[static_cast<std::size_t>(lv)])
      if (name != "0" && name != "1") assigned.emplace_back(name, lv);
  std::sort(assigned.begin(), assigned.end());
  for (auto& [n, lv] : assigned) {
    m.atoms.push_back(n);
    m.level.push_back(lv);
  }
  return m;
}

}  // namespace sstt::tope
