// Weak-head reduction, tope entailment plumbing and typed conversion.

#include <functional>

#include "sstt/checker.hpp"

namespace sstt {

namespace {

std::string memo_key(const tope::CubeContext& ctx, const tope::Tope& hyp, const tope::Tope& goal) {
  std::string k;
  for (const auto& [n, c] : ctx) k += n + ":" + c.str() + ",";
  k += "|" + tope::to_string(hyp) + "|-" + tope::to_string(goal);
  return k;
}

bool is_bot(const Expr& e) { return !e || e->tag == Tag::Bot; }

}  // namespace

bool Checker::entails(const TriContext& ctx, const Expr& phi) {
  tope::Sequent s;
  try {
    s.ctx = ctx.cube_context();
    s.hyp = to_tope(ctx.hyp());
    s.goal = to_tope(phi);
  } catch (const tope::TopeError& e) {
    fail(DiagKind::ScopeError, ctx, phi, e.what());
  }
  std::string key = memo_key(s.ctx, s.hyp, s.goal);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool r = false;
  try {
    r = tope::entails(s).entailed;
  } catch (const tope::TopeError& e) {
    if (e.kind() == tope::TopeError::Kind::TooLarge) fail(DiagKind::TopeTooLarge, ctx, phi, e.what());
    fail(DiagKind::ScopeError, ctx, phi, e.what());
  }
  memo_.emplace(std::move(key), r);
  return r;
}

bool Checker::consistent(const TriContext& ctx) {
  if (ctx.hyps().empty()) return true;
  auto& m = *ctx.consistent_memo;
  if (!m) m = !entails(ctx, mk::bot());
  return *m;
}

std::vector<std::vector<Expr>> Checker::dnf(const Expr& t, const TriContext& ctx, const Expr& at) {
  switch (t->tag) {
    case Tag::Top: return {{}};
    case Tag::Bot: return {};
    case Tag::Or: {
      auto l = dnf(t->kids[0], ctx, at), r = dnf(t->kids[1], ctx, at);
      l.insert(l.end(), r.begin(), r.end());
      if (l.size() > tope::kMaxDisjuncts)
        fail(DiagKind::TopeTooLarge, ctx, at, "tope has more than " + std::to_string(tope::kMaxDisjuncts) + " disjuncts");
      return l;
    }
    case Tag::And: {
      auto l = dnf(t->kids[0], ctx, at), r = dnf(t->kids[1], ctx, at);
      if (l.size() * r.size() > tope::kMaxDisjuncts)
        fail(DiagKind::TopeTooLarge, ctx, at, "tope has more than " + std::to_string(tope::kMaxDisjuncts) + " disjuncts");
      std::vector<std::vector<Expr>> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          auto c = a;
          c.insert(c.end(), b.begin(), b.end());
          out.push_back(std::move(c));
        }
      return out;
    }
    default: return {{t}};
  }
}

std::vector<TriContext> Checker::split(const TriContext& ctx, const Expr& at) {
  std::vector<TriContext> out;
  for (auto& branch : dnf(ctx.hyp(), ctx, at)) {
    TriContext b = ctx.with_hyps(std::move(branch));
    if (consistent(b)) out.push_back(std::move(b));
  }
  return out;
}

// ---- reduction ----

std::optional<Expr> Checker::stuck_case(const Expr& e) const {
  Expr h = e;
  for (;;) {
    switch (h->tag) {
      case Tag::Case: return h;
      case Tag::App:
      case Tag::Fst:
      case Tag::Snd: h = h->kids[0]; break;
      case Tag::J: h = h->kids[5]; break;
      default: return std::nullopt;
    }
  }
}

Expr Checker::type_of_neutral(const TriContext& ctx, const Expr& e) {
  switch (e->tag) {
    case Tag::Var: {
      if (const auto* en = ctx.lookup(e->name)) return en->is_cube ? nullptr : en->type;
      if (auto g = scope_.find(e->name)) return g->type;
      return nullptr;
    }
    case Tag::App: {
      Expr t = type_of_neutral(ctx, e->kids[0]);
      if (!t) return nullptr;
      t = whnf_core(ctx, t, true);
      if (t->tag == Tag::Pi) return subst(t->kids[1], t->name, e->kids[1]);
      if (t->tag == Tag::Ext) return instantiate(t->kids[1], t->pat, e->kids[1]);
      return nullptr;
    }
    case Tag::Fst:
    case Tag::Snd: {
      Expr t = type_of_neutral(ctx, e->kids[0]);
      if (!t) return nullptr;
      t = whnf_core(ctx, t, true);
      if (t->tag != Tag::Sigma) return nullptr;
      if (e->tag == Tag::Fst) return t->kids[0];
      return subst(t->kids[1], t->name, mk::fst(e->kids[0]));
    }
    case Tag::J: return mk::app(mk::app(e->kids[2], e->kids[4]), e->kids[5]);
    case Tag::Ann: return e->kids[1];
    default: return nullptr;
  }
}

Expr Checker::whnf(const TriContext& ctx, const Expr& e) { return whnf_core(ctx, e, true); }

Expr Checker::whnf_core(const TriContext& ctx, const Expr& e, bool delta) {
  Expr x = e;
  for (;;) {
    switch (x->tag) {
      case Tag::Ann: x = x->kids[0]; continue;
      case Tag::Var: {
        if (!delta || ctx.binds(x->name)) return x;
        auto g = scope_.find(x->name);
        if (!g || g->tag != LedgerTag::Definition || !g->value) return x;
        if (fuel_left_ == 0)
          fail(DiagKind::FuelExhausted, ctx, e,
               "unfolding budget of " + std::to_string(opts_.fuel) + " definition unfoldings exhausted");
        --fuel_left_;
        x = *g->value;
        continue;
      }
      case Tag::App: {
        Expr f = whnf_core(ctx, x->kids[0], delta);
        const Expr& arg = x->kids[1];
        if (f->tag == Tag::Lam) {
          x = instantiate(f->kids[0], f->pat, arg);
          continue;
        }
        Expr y = f == x->kids[0] ? x : mk::app(f, arg, x->span);
        // extension-type computation: f c reduces to the boundary when c is in it
        if (Expr t = type_of_neutral(ctx, f)) {
          t = whnf_core(ctx, t, true);
          if (t->tag == Tag::Ext && !is_bot(t->kids[2]) && t->kids.size() > 3 && t->kids[3] &&
              entails(ctx, instantiate(t->kids[2], t->pat, arg))) {
            x = instantiate(t->kids[3], t->pat, arg);
            continue;
          }
        }
        return y;
      }
      case Tag::Fst:
      case Tag::Snd: {
        Expr p = whnf_core(ctx, x->kids[0], delta);
        if (p->tag == Tag::Pair) {
          x = p->kids[x->tag == Tag::Fst ? 0 : 1];
          continue;
        }
        return p == x->kids[0] ? x : rebuild(x, {p});
      }
      case Tag::J: {
        Expr p = whnf_core(ctx, x->kids[5], delta);
        if (p->tag == Tag::Refl) {
          x = x->kids[3];
          continue;
        }
        if (p == x->kids[5]) return x;
        auto kids = x->kids;
        kids[5] = p;
        return rebuild(x, std::move(kids));
      }
      case Tag::Case: {
        bool moved = false;
        for (std::size_t i = 0; i + 1 < x->kids.size(); i += 2) {
          if (entails(ctx, x->kids[i])) {
            x = x->kids[i + 1];
            moved = true;
            break;
          }
        }
        if (moved) continue;
        return x;
      }
      default: return x;
    }
  }
}

// ---- conversion ----

bool Checker::equal(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b) {
  return conv(ctx, type, a, b);
}

bool Checker::conv(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b) {
  if (alpha_equal(a, b)) return true;
  if (!consistent(ctx)) return true;
  if (conv_whnf(ctx, type, a, b)) return true;
  if (ctx.has_disjunction()) return conv_split(ctx, type, a, b);
  return false;
}

bool Checker::conv_split(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b) {
  for (const auto& branch : split(ctx, a))
    if (!conv_whnf(branch, type, a, b)) return false;
  return true;
}

namespace {

// Head constant of an application spine.
const Node* spine_head(const Expr& e) {
  const Node* h = e.get();
  while (h->tag == Tag::App || h->tag == Tag::Fst || h->tag == Tag::Snd) h = h->kids[0].get();
  return h->tag == Tag::Var ? h : nullptr;
}

}  // namespace

bool Checker::conv_whnf(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b) {
  Expr t = type ? whnf(ctx, type) : nullptr;
  if (t) {
    if (auto c = stuck_case(t)) {
      for (std::size_t i = 0; i + 1 < (*c)->kids.size(); i += 2) {
        TriContext bi = ctx.with_hyp((*c)->kids[i]);
        if (consistent(bi) && !conv(bi, type, a, b)) return false;
      }
      return true;
    }
    switch (t->tag) {
      case Tag::Pi: {
        std::string y = fresh(ctx, t->name);
        TriContext c2 = ctx.with_var(y, t->kids[0]);
        Expr v = mk::var(y);
        Expr wa = whnf_core(ctx, a, false), wb = whnf_core(ctx, b, false);
        auto apply = [&](const Expr& f) {
          if (f->tag == Tag::Lam && !f->pat->is_pair()) return instantiate(f->kids[0], f->pat, v);
          return mk::app(f, v);
        };
        return conv(c2, subst(t->kids[1], t->name, v), apply(wa), apply(wb));
      }
      case Tag::Sigma: {
        Expr fa = project_fst(whnf(ctx, a)), fb = project_fst(whnf(ctx, b));
        if (!conv(ctx, t->kids[0], fa, fb)) return false;
        return conv(ctx, subst(t->kids[1], t->name, fa), project_snd(whnf(ctx, a)), project_snd(whnf(ctx, b)));
      }
      case Tag::Ext: {
        Expr wa = whnf(ctx, a), wb = whnf(ctx, b);
        if (wa->tag == Tag::Lam && wb->tag == Tag::Lam) {
          TriContext c2 = ctx;
          Expr c = bind_pattern(c2, t->pat, t->cube);
          c2 = c2.with_hyp(instantiate(t->kids[0], t->pat, c));
          return conv(c2, instantiate(t->kids[1], t->pat, c), instantiate(wa->kids[0], wa->pat, c),
                      instantiate(wb->kids[0], wb->pat, c));
        }
        return conv_struct(ctx, wa, wb);
      }
      default: break;
    }
  }
  // Try the unexpanded spines first when both sides share a head constant.
  {
    Expr na = whnf_core(ctx, a, false), nb = whnf_core(ctx, b, false);
    const Node* ha = spine_head(na);
    const Node* hb = spine_head(nb);
    if (ha && hb && ha->name == hb->name && !ctx.binds(ha->name) && conv_neutral(ctx, na, nb)) return true;
  }
  Expr wa = whnf(ctx, a), wb = whnf(ctx, b);
  if (alpha_equal(wa, wb)) return true;
  for (const Expr* side : {&wa, &wb}) {
    if (auto c = stuck_case(*side)) {
      bool any = false;
      for (std::size_t i = 0; i + 1 < (*c)->kids.size(); i += 2) {
        TriContext bi = ctx.with_hyp((*c)->kids[i]);
        if (!consistent(bi)) continue;
        any = true;
        if (!conv(bi, type, wa, wb)) return false;
      }
      if (any) return true;
    }
  }
  return conv_struct(ctx, wa, wb);
}

bool Checker::tope_equiv(const TriContext& ctx, const Expr& a, const Expr& b) {
  if (alpha_equal(a, b)) return true;
  return entails(ctx.with_hyp(a), b) && entails(ctx.with_hyp(b), a);
}

bool Checker::conv_struct(const TriContext& ctx, const Expr& a, const Expr& b) {
  if (alpha_equal(a, b)) return true;
  if (is_tope(a) && is_tope(b)) return tope_equiv(ctx, a, b);
  if (a->tag != b->tag) return false;
  static const Expr kU = mk::universe();
  switch (a->tag) {
    case Tag::Universe:
    case Tag::UnitType:
    case Tag::UnitVal:
    case Tag::Refl:
    case Tag::Zero:
    case Tag::One:
    case Tag::CubeStar: return true;
    case Tag::Pi:
    case Tag::Sigma: {
      if (!conv(ctx, kU, a->kids[0], b->kids[0])) return false;
      std::string y = fresh(ctx, a->name);
      Expr v = mk::var(y);
      return conv(ctx.with_var(y, a->kids[0]), kU, subst(a->kids[1], a->name, v), subst(b->kids[1], b->name, v));
    }
    case Tag::Id:
      return conv(ctx, kU, a->kids[0], b->kids[0]) && conv(ctx, a->kids[0], a->kids[1], b->kids[1]) &&
             conv(ctx, a->kids[0], a->kids[2], b->kids[2]);
    case Tag::Ext: {
      if (a->cube != b->cube || !pattern_fits(b->pat, a->cube)) return false;
      TriContext c2 = ctx;
      Expr c = bind_pattern(c2, a->pat, a->cube);
      auto at = [&](const Expr& x, std::size_t i) { return instantiate(x->kids[i], x->pat, c); };
      if (!tope_equiv(c2, at(a, 0), at(b, 0))) return false;
      TriContext cpsi = c2.with_hyp(at(a, 0));
      Expr fam = at(a, 1);
      if (!conv(cpsi, kU, fam, at(b, 1))) return false;
      if (!tope_equiv(cpsi, at(a, 2), at(b, 2))) return false;
      TriContext cphi = cpsi.with_hyp(at(a, 2));
      if (!consistent(cphi)) return true;
      bool ha = a->kids.size() > 3 && a->kids[3], hb = b->kids.size() > 3 && b->kids[3];
      if (!ha || !hb) return ha == hb;
      return conv(cphi, fam, at(a, 3), at(b, 3));
    }
    case Tag::Lam: {
      if (!alpha_equal(a->pat, b->pat)) return false;
      Subst ren;
      std::set<std::string> avoid;
      for (const auto& en : ctx.entries()) avoid.insert(en.name);
      avoid.insert(a->free().begin(), a->free().end());
      avoid.insert(b->free().begin(), b->free().end());
      Pattern p = freshen(a->pat, avoid, ren);
      Expr pt = pattern_point(p);
      return conv(ctx, nullptr, instantiate(a->kids[0], a->pat, pt), instantiate(b->kids[0], b->pat, pt));
    }
    case Tag::Pair: return conv(ctx, nullptr, a->kids[0], b->kids[0]) && conv(ctx, nullptr, a->kids[1], b->kids[1]);
    case Tag::Case: {
      if (a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i + 1 < a->kids.size(); i += 2) {
        if (!tope_equiv(ctx, a->kids[i], b->kids[i])) return false;
        if (!conv(ctx.with_hyp(a->kids[i]), nullptr, a->kids[i + 1], b->kids[i + 1])) return false;
      }
      return true;
    }
    case Tag::Var:
    case Tag::App:
    case Tag::Fst:
    case Tag::Snd:
    case Tag::J: return conv_neutral(ctx, a, b).has_value();
    default: return false;
  }
}

std::optional<Expr> Checker::conv_neutral(const TriContext& ctx, const Expr& a, const Expr& b) {
  if (a->tag != b->tag) return std::nullopt;
  switch (a->tag) {
    case Tag::Var: {
      if (a->name != b->name) return std::nullopt;
      return type_of_neutral(ctx, a);
    }
    case Tag::App: {
      auto ft = conv_neutral(ctx, a->kids[0], b->kids[0]);
      if (!ft) return std::nullopt;
      Expr t = *ft ? whnf(ctx, *ft) : nullptr;
      const Expr &x = a->kids[1], &y = b->kids[1];
      if (t && t->tag == Tag::Pi) {
        if (!conv(ctx, t->kids[0], x, y)) return std::nullopt;
        return subst(t->kids[1], t->name, x);
      }
      if (t && t->tag == Tag::Ext) {
        if (!alpha_equal(x, y) && !entails(ctx, mk::teq(x, y))) return std::nullopt;
        return instantiate(t->kids[1], t->pat, x);
      }
      if (!conv(ctx, nullptr, x, y)) return std::nullopt;
      return Expr{};
    }
    case Tag::Fst:
    case Tag::Snd: {
      auto pt = conv_neutral(ctx, a->kids[0], b->kids[0]);
      if (!pt) return std::nullopt;
      Expr t = *pt ? whnf(ctx, *pt) : nullptr;
      if (!t || t->tag != Tag::Sigma) return Expr{};
      if (a->tag == Tag::Fst) return t->kids[0];
      return subst(t->kids[1], t->name, mk::fst(a->kids[0]));
    }
    case Tag::J: {
      static const Expr kU = mk::universe();
      const auto &ka = a->kids, &kb = b->kids;
      if (!conv(ctx, kU, ka[0], kb[0]) || !conv(ctx, ka[0], ka[1], kb[1])) return std::nullopt;
      std::string y = fresh(ctx, "y");
      Expr motive = mk::pi(y, ka[0], mk::arrow(mk::id(ka[0], ka[1], mk::var(y)), kU));
      if (!conv(ctx, motive, ka[2], kb[2])) return std::nullopt;
      if (!conv(ctx, mk::app(mk::app(ka[2], ka[1]), mk::refl()), ka[3], kb[3])) return std::nullopt;
      if (!conv(ctx, ka[0], ka[4], kb[4])) return std::nullopt;
      if (!conv(ctx, mk::id(ka[0], ka[1], ka[4]), ka[5], kb[5])) return std::nullopt;
      return mk::app(mk::app(ka[2], ka[4]), ka[5]);
    }
    default: return std::nullopt;
  }
}

}  // namespace sstt
