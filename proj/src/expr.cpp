#include "sstt/expr.hpp"

#include <algorithm>
#include <utility>

namespace sstt {

Pattern PatternNode::name(std::string n) {
  auto p = std::make_shared<PatternNode>();
  p->name_ = std::move(n);
  return p;
}

Pattern PatternNode::pair(Pattern l, Pattern r) {
  auto p = std::make_shared<PatternNode>();
  p->left_ = std::move(l);
  p->right_ = std::move(r);
  return p;
}

void PatternNode::leaves(std::vector<std::string>& out) const {
  if (is_pair()) {
    left_->leaves(out);
    right_->leaves(out);
  } else {
    out.push_back(name_);
  }
}

namespace {

std::vector<std::string> leaves_of(const Pattern& p) {
  std::vector<std::string> out;
  p->leaves(out);
  return out;
}

}  // namespace

Node::Node(Tag t, std::string n, Pattern p, std::vector<Expr> k, Span s)
    : tag(t), name(std::move(n)), pat(std::move(p)), kids(std::move(k)), span(s) {
  switch (tag) {
    case Tag::Var: free_.insert(name); break;
    case Tag::Pi:
    case Tag::Sigma: {
      free_ = kids[0]->free();
      for (const auto& v : kids[1]->free())
        if (v != name) free_.insert(v);
      break;
    }
    case Tag::Lam:
    case Tag::Ext: {
      for (const auto& kid : kids)
        if (kid) free_.insert(kid->free().begin(), kid->free().end());
      for (const auto& l : leaves_of(pat)) free_.erase(l);
      break;
    }
    default:
      for (const auto& kid : kids)
        if (kid) free_.insert(kid->free().begin(), kid->free().end());
  }
}

namespace mk {

namespace {
Expr node(Tag t, std::vector<Expr> kids, Span s, std::string name = {}, Pattern pat = {}) {
  return std::make_shared<const Node>(t, std::move(name), std::move(pat), std::move(kids), s);
}
}  // namespace

Expr var(std::string n, Span s) { return node(Tag::Var, {}, s, std::move(n)); }
Expr universe(Span s) { return node(Tag::Universe, {}, s); }
Expr unit_type(Span s) { return node(Tag::UnitType, {}, s); }
Expr unit_val(Span s) { return node(Tag::UnitVal, {}, s); }
Expr pi(std::string x, Expr a, Expr b, Span s) { return node(Tag::Pi, {std::move(a), std::move(b)}, s, std::move(x)); }
Expr arrow(Expr a, Expr b, Span s) { return pi("_", std::move(a), std::move(b), s); }
Expr lam(Pattern p, Expr body, Span s) { return node(Tag::Lam, {std::move(body)}, s, {}, std::move(p)); }
Expr lam(std::string x, Expr body, Span s) { return lam(PatternNode::name(std::move(x)), std::move(body), s); }
Expr app(Expr f, Expr a, Span s) { return node(Tag::App, {std::move(f), std::move(a)}, s); }
Expr apps(Expr f, std::vector<Expr> args) {
  for (auto& a : args) f = app(std::move(f), std::move(a));
  return f;
}
Expr sigma(std::string x, Expr a, Expr b, Span s) {
  return node(Tag::Sigma, {std::move(a), std::move(b)}, s, std::move(x));
}
Expr pair(Expr a, Expr b, Span s) { return node(Tag::Pair, {std::move(a), std::move(b)}, s); }
Expr fst(Expr p, Span s) { return node(Tag::Fst, {std::move(p)}, s); }
Expr snd(Expr p, Span s) { return node(Tag::Snd, {std::move(p)}, s); }
Expr id(Expr a, Expr x, Expr y, Span s) { return node(Tag::Id, {std::move(a), std::move(x), std::move(y)}, s); }
Expr refl(Span s) { return node(Tag::Refl, {}, s); }
Expr j(Expr a, Expr x, Expr c, Expr d, Expr y, Expr p, Span s) {
  return node(Tag::J, {std::move(a), std::move(x), std::move(c), std::move(d), std::move(y), std::move(p)}, s);
}
Expr ext(Pattern p, tope::Cube cube, Expr shape, Expr family, Expr btope, Expr bterm, Span s) {
  auto n = std::make_shared<Node>(Tag::Ext, std::string{}, std::move(p),
                                  std::vector<Expr>{std::move(shape), std::move(family), std::move(btope), std::move(bterm)}, s);
  n->cube = std::move(cube);
  return n;
}
Expr cases(std::vector<Expr> topes_and_terms, Span s) { return node(Tag::Case, std::move(topes_and_terms), s); }
Expr ann(Expr e, Expr t, Span s) { return node(Tag::Ann, {std::move(e), std::move(t)}, s); }
Expr zero(Span s) { return node(Tag::Zero, {}, s); }
Expr one(Span s) { return node(Tag::One, {}, s); }
Expr cube_star(Span s) { return node(Tag::CubeStar, {}, s); }
Expr top(Span s) { return node(Tag::Top, {}, s); }
Expr bot(Span s) { return node(Tag::Bot, {}, s); }
Expr conj(Expr l, Expr r, Span s) { return node(Tag::And, {std::move(l), std::move(r)}, s); }
Expr disj(Expr l, Expr r, Span s) { return node(Tag::Or, {std::move(l), std::move(r)}, s); }
Expr le(Expr l, Expr r, Span s) { return node(Tag::Le, {std::move(l), std::move(r)}, s); }
Expr teq(Expr l, Expr r, Span s) { return node(Tag::TEq, {std::move(l), std::move(r)}, s); }
Expr shape_app(std::string name, Expr point, Span s) { return node(Tag::ShapeApp, {std::move(point)}, s, std::move(name)); }

}  // namespace mk

Expr rebuild(const Expr& e, std::vector<Expr> kids) {
  auto n = std::make_shared<Node>(e->tag, e->name, e->pat, std::move(kids), e->span);
  n->cube = e->cube;
  n->cube_pending = e->cube_pending;
  return n;
}

bool is_tope(const Expr& e) {
  switch (e->tag) {
    case Tag::Top:
    case Tag::Bot:
    case Tag::And:
    case Tag::Or:
    case Tag::Le:
    case Tag::TEq:
    case Tag::ShapeApp: return true;
    default: return false;
  }
}

bool is_point_syntax(const Expr& e) {
  switch (e->tag) {
    case Tag::Zero:
    case Tag::One:
    case Tag::CubeStar: return true;
    case Tag::Pair: return is_point_syntax(e->kids[0]) && is_point_syntax(e->kids[1]);
    case Tag::Fst:
    case Tag::Snd: return is_point_syntax(e->kids[0]);
    default: return false;
  }
}

Expr pattern_point(const Pattern& p) {
  if (p->is_pair()) return mk::pair(pattern_point(p->left()), pattern_point(p->right()));
  return mk::var(p->name());
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = (base.empty() || base == "_") ? "x" : base;
  if (!avoid.count(stem) && stem != base) return stem;
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

Pattern freshen(const Pattern& p, const std::set<std::string>& avoid, Subst& renaming) {
  if (p->is_pair()) {
    Pattern l = freshen(p->left(), avoid, renaming);
    std::set<std::string> more = avoid;
    std::vector<std::string> ls;
    l->leaves(ls);
    more.insert(ls.begin(), ls.end());
    Pattern r = freshen(p->right(), more, renaming);
    return PatternNode::pair(l, r);
  }
  if (!avoid.count(p->name()) && p->name() != "_") return p;
  std::string n = fresh_name(p->name(), avoid);
  if (p->name() != "_") renaming[p->name()] = mk::var(n);
  return PatternNode::name(n);
}

namespace {

Pattern rename_pattern(const Pattern& p, const std::map<std::string, std::string>& ren) {
  if (p->is_pair()) return PatternNode::pair(rename_pattern(p->left(), ren), rename_pattern(p->right(), ren));
  auto it = ren.find(p->name());
  return it == ren.end() ? p : PatternNode::name(it->second);
}

bool touches(const Expr& e, const Subst& s) {
  if (!e) return false;
  const auto& fv = e->free();
  if (s.size() < fv.size()) {
    for (const auto& [k, v] : s)
      if (fv.count(k)) return true;
    return false;
  }
  for (const auto& v : fv)
    if (s.count(v)) return true;
  return false;
}

// Substitution entering a scope that binds `binders` over `body`. Returns the
// substitution to use inside, and fills `ren` with binders that had to be
// renamed because a substituted value mentions them.
Subst enter(const std::vector<std::string>& binders, const Subst& s, const std::vector<Expr>& body,
            std::map<std::string, std::string>& ren) {
  Subst inner;
  std::set<std::string> bodyFree;
  for (const auto& b : body)
    if (b) bodyFree.insert(b->free().begin(), b->free().end());
  for (const auto& [k, v] : s)
    if (std::find(binders.begin(), binders.end(), k) == binders.end() && bodyFree.count(k)) inner.emplace(k, v);
  if (inner.empty()) return inner;
  std::set<std::string> valueFree;
  for (const auto& [k, v] : inner) valueFree.insert(v->free().begin(), v->free().end());
  std::set<std::string> avoid = bodyFree;
  avoid.insert(valueFree.begin(), valueFree.end());
  avoid.insert(binders.begin(), binders.end());
  for (const auto& [k, v] : inner) avoid.insert(k);
  for (const auto& b : binders) {
    if (b == "_" || !valueFree.count(b)) continue;
    std::string nb = fresh_name(b, avoid);
    avoid.insert(nb);
    ren[b] = nb;
    inner[b] = mk::var(nb);
  }
  return inner;
}

}  // namespace

Expr substitute(const Expr& e, const Subst& s) {
  if (!e || s.empty() || !touches(e, s)) return e;
  switch (e->tag) {
    case Tag::Var: {
      auto it = s.find(e->name);
      if (it == s.end()) return e;
      // a renaming keeps the occurrence's source position for diagnostics
      if (it->second->tag == Tag::Var && e->span.valid()) return mk::var(it->second->name, e->span);
      return it->second;
    }
    case Tag::Pi:
    case Tag::Sigma: {
      Expr a = substitute(e->kids[0], s);
      std::map<std::string, std::string> ren;
      Subst inner = enter({e->name}, s, {e->kids[1]}, ren);
      Expr b = substitute(e->kids[1], inner);
      auto n = std::make_shared<Node>(e->tag, ren.count(e->name) ? ren[e->name] : e->name, nullptr,
                                      std::vector<Expr>{a, b}, e->span);
      return n;
    }
    case Tag::Lam:
    case Tag::Ext: {
      std::map<std::string, std::string> ren;
      Subst inner = enter(leaves_of(e->pat), s, e->kids, ren);
      std::vector<Expr> kids;
      for (const auto& k : e->kids) kids.push_back(substitute(k, inner));
      auto n = std::make_shared<Node>(e->tag, e->name, rename_pattern(e->pat, ren), std::move(kids), e->span);
      n->cube = e->cube;
      n->cube_pending = e->cube_pending;
      return n;
    }
    default: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(substitute(k, s));
      return rebuild(e, std::move(kids));
    }
  }
}

Expr subst(const Expr& e, const std::string& x, const Expr& v) { return substitute(e, Subst{{x, v}}); }

Expr project_fst(const Expr& p) { return p->tag == Tag::Pair ? p->kids[0] : mk::fst(p); }
Expr project_snd(const Expr& p) { return p->tag == Tag::Pair ? p->kids[1] : mk::snd(p); }

namespace {
void match_into(const Pattern& p, const Expr& point, Subst& out) {
  if (p->is_pair()) {
    match_into(p->left(), project_fst(point), out);
    match_into(p->right(), project_snd(point), out);
  } else if (p->name() != "_") {
    out[p->name()] = point;
  }
}
}  // namespace

Subst match_pattern(const Pattern& p, const Expr& point) {
  Subst out;
  match_into(p, point, out);
  return out;
}

Expr instantiate(const Expr& body, const Pattern& p, const Expr& point) {
  return substitute(body, match_pattern(p, point));
}

bool alpha_equal(const Pattern& a, const Pattern& b) {
  if (a->is_pair() != b->is_pair()) return false;
  if (!a->is_pair()) return true;
  return alpha_equal(a->left(), b->left()) && alpha_equal(a->right(), b->right());
}

namespace {

struct AlphaEnv {
  std::vector<std::pair<std::string, int>> left, right;
  int depth = 0;

  static int find(const std::vector<std::pair<std::string, int>>& env, const std::string& n) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == n) return it->second;
    return -1;
  }

  void bind(const std::vector<std::string>& l, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      left.emplace_back(l[i], depth);
      right.emplace_back(r[i], depth);
      ++depth;
    }
  }

  void unbind(std::size_t n) {
    left.resize(left.size() - n);
    right.resize(right.size() - n);
    depth -= static_cast<int>(n);
  }
};

bool alpha(const Expr& a, const Expr& b, AlphaEnv& env) {
  if (!a || !b) return !a && !b;
  if (a == b && env.depth == 0) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::Var: {
      int la = AlphaEnv::find(env.left, a->name), lb = AlphaEnv::find(env.right, b->name);
      if (la < 0 && lb < 0) return a->name == b->name;
      return la == lb;
    }
    case Tag::Pi:
    case Tag::Sigma: {
      if (!alpha(a->kids[0], b->kids[0], env)) return false;
      env.bind({a->name}, {b->name});
      bool ok = alpha(a->kids[1], b->kids[1], env);
      env.unbind(1);
      return ok;
    }
    case Tag::Lam:
    case Tag::Ext: {
      if (!alpha_equal(a->pat, b->pat)) return false;
      if (a->tag == Tag::Ext && (a->cube != b->cube || a->cube_pending != b->cube_pending)) return false;
      auto la = leaves_of(a->pat), lb = leaves_of(b->pat);
      env.bind(la, lb);
      bool ok = a->kids.size() == b->kids.size();
      for (std::size_t i = 0; ok && i < a->kids.size(); ++i) ok = alpha(a->kids[i], b->kids[i], env);
      env.unbind(la.size());
      return ok;
    }
    case Tag::ShapeApp:
      if (a->name != b->name) return false;
      [[fallthrough]];
    default: {
      if (a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!alpha(a->kids[i], b->kids[i], env)) return false;
      return true;
    }
  }
}

}  // namespace

bool alpha_equal(const Expr& a, const Expr& b) {
  AlphaEnv env;
  return alpha(a, b, env);
}

tope::Point to_point(const Expr& e) {
  switch (e->tag) {
    case Tag::Var: return tope::var(e->name);
    case Tag::Zero: return tope::zero();
    case Tag::One: return tope::one();
    case Tag::CubeStar: return tope::star();
    case Tag::Pair: return tope::pair(to_point(e->kids[0]), to_point(e->kids[1]));
    case Tag::Fst: return tope::fst(to_point(e->kids[0]));
    case Tag::Snd: return tope::snd(to_point(e->kids[0]));
    default: throw tope::TopeError(tope::TopeError::Kind::Scope, "expression is not a cube point");
  }
}

tope::Tope to_tope(const Expr& e) {
  switch (e->tag) {
    case Tag::Top: return tope::top();
    case Tag::Bot: return tope::bot();
    case Tag::And: return tope::conj(to_tope(e->kids[0]), to_tope(e->kids[1]));
    case Tag::Or: return tope::disj(to_tope(e->kids[0]), to_tope(e->kids[1]));
    case Tag::Le: return tope::le(to_point(e->kids[0]), to_point(e->kids[1]));
    case Tag::TEq: return tope::eq(to_point(e->kids[0]), to_point(e->kids[1]));
    case Tag::ShapeApp:
      throw tope::TopeError(tope::TopeError::Kind::Scope, "unresolved shape '" + e->name + "'");
    default: throw tope::TopeError(tope::TopeError::Kind::Scope, "expression is not a tope");
  }
}

Expr from_point(const tope::Point& p) {
  using K = tope::PointNode::Kind;
  switch (p->kind) {
    case K::Var: return mk::var(p->name);
    case K::Zero: return mk::zero();
    case K::One: return mk::one();
    case K::Star: return mk::cube_star();
    case K::Pair: return mk::pair(from_point(p->a), from_point(p->b));
    case K::Fst: return mk::fst(from_point(p->a));
    case K::Snd: return mk::snd(from_point(p->a));
  }
  return mk::cube_star();
}

}  // namespace sstt
