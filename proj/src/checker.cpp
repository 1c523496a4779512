#include "sstt/checker.hpp"

#include <array>
#include <utility>

namespace sstt {

// ---- names ----

namespace {
constexpr std::array<std::pair<DiagKind, const char*>, 9> kDiagNames = {{
    {DiagKind::ParseError, "parse_error"},
    {DiagKind::ScopeError, "scope_error"},
    {DiagKind::TypeMismatch, "type_mismatch"},
    {DiagKind::TopeUnsolved, "tope_unsolved"},
    {DiagKind::BoundaryMismatch, "boundary_mismatch"},
    {DiagKind::FuelExhausted, "fuel_exhausted"},
    {DiagKind::TopeTooLarge, "tope_too_large"},
    {DiagKind::UnledgeredAxiom, "unledgered_axiom"},
    {DiagKind::AnnotationRequired, "annotation_required"},
}};
}  // namespace

const char* diag_kind_name(DiagKind k) {
  for (const auto& [kind, name] : kDiagNames)
    if (kind == k) return name;
  return "?";
}

bool parse_diag_kind(const std::string& s, DiagKind& out) {
  for (const auto& [kind, name] : kDiagNames)
    if (s == name) {
      out = kind;
      return true;
    }
  return false;
}

const char* ledger_tag_name(LedgerTag t) {
  switch (t) {
    case LedgerTag::Definition: return "definition";
    case LedgerTag::Axiom: return "axiom";
    case LedgerTag::TheoremProved: return "theorem-proved";
    case LedgerTag::TheoremStated: return "theorem-stated";
  }
  return "?";
}

// ---- global scope ----

GlobalScope::GlobalScope() : shapes_(ShapeTable::builtin()) {}

GlobalScope::GlobalScope(const GlobalScope& o) {
  std::shared_lock lock(o.mu_);
  entries_ = o.entries_;
  order_ = o.order_;
  shapes_ = o.shapes_;
}

GlobalScope& GlobalScope::operator=(const GlobalScope& o) {
  if (this == &o) return *this;
  GlobalScope tmp(o);
  std::unique_lock lock(mu_);
  entries_ = std::move(tmp.entries_);
  order_ = std::move(tmp.order_);
  shapes_ = std::move(tmp.shapes_);
  return *this;
}

std::optional<GlobalEntry> GlobalScope::find(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool GlobalScope::contains(const std::string& name) const {
  std::shared_lock lock(mu_);
  return entries_.count(name) != 0 || shapes_.find(name) != nullptr;
}

void GlobalScope::add(GlobalEntry e) {
  std::unique_lock lock(mu_);
  std::string n = e.name;
  if (!entries_.count(n)) order_.push_back(n);
  entries_[n] = std::move(e);
}

void GlobalScope::add_shape(ShapeDef s, const std::string& file, Span span) {
  std::unique_lock lock(mu_);
  GlobalEntry e;
  e.name = s.name;
  e.file = file;
  e.span = span;
  e.is_shape = true;
  if (!entries_.count(s.name)) order_.push_back(s.name);
  entries_[s.name] = e;
  shapes_.add(std::move(s));
}

ShapeTable GlobalScope::shapes() const {
  std::shared_lock lock(mu_);
  return shapes_;
}

std::vector<std::string> GlobalScope::names() const {
  std::shared_lock lock(mu_);
  return order_;
}

// ---- checker plumbing ----

struct Checker::SpanGuard {
  Checker& c;
  Span saved;
  SpanGuard(Checker& ch, const Expr& e) : c(ch), saved(ch.span_) {
    if (e && e->span.valid()) c.span_ = e->span;
  }
  ~SpanGuard() { c.span_ = saved; }
};

Checker::Checker(const GlobalScope& scope, CheckOptions opts)
    : scope_(scope), shapes_(scope.shapes()), opts_(opts), fuel_left_(opts.fuel) {}

std::string Checker::show(const Expr& e) const {
  if (!e) return "";
  PrintOptions o;
  o.shapes = &shapes_;
  return print_expr(e, o);
}

void Checker::fail(DiagKind k, const TriContext& ctx, const Expr& at, std::string msg, std::string lhs,
                   std::string rhs, std::string sequent) {
  Diagnostic d;
  d.kind = k;
  d.span = at && at->span.valid() ? at->span : span_;
  d.message = std::move(msg);
  d.lhs = std::move(lhs);
  d.rhs = std::move(rhs);
  d.sequent = std::move(sequent);
  d.context = ctx.snapshot();
  throw CheckError(std::move(d));
}

std::string Checker::fresh(const TriContext& ctx, const std::string& base, const std::vector<Expr>& avoid_in) {
  auto taken = [&](const std::string& n) {
    if (n == "_" || ctx.binds(n) || scope_.contains(n)) return true;
    for (const auto& e : avoid_in)
      if (e && e->mentions(n)) return true;
    return false;
  };
  std::string stem = (base.empty() || base == "_") ? "x" : base;
  if (!taken(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!taken(cand)) return cand;
  }
}

Expr Checker::bind_pattern(TriContext& ctx, const Pattern& pat, const tope::Cube& cube) {
  if (pat->is_pair()) {
    if (cube.kind() != tope::Cube::Kind::Product)
      fail(DiagKind::TypeMismatch, ctx, nullptr, "tuple pattern does not fit the cube " + cube.str());
    Expr l = bind_pattern(ctx, pat->left(), cube.left());
    Expr r = bind_pattern(ctx, pat->right(), cube.right());
    return mk::pair(l, r);
  }
  std::string n = fresh(ctx, pat->name());
  ctx = ctx.with_cube(n, cube);
  return mk::var(n);
}

static std::string sequent_text(const TriContext& ctx, const Expr& goal, const Checker& c) {
  std::string s;
  for (const auto& [n, cube] : ctx.cube_context()) {
    if (!s.empty()) s += " ";
    s += cube.kind() == tope::Cube::Kind::Interval ? n : "(" + n + " : " + cube.str() + ")";
  }
  return s + (s.empty() ? "| " : " | ") + c.show(ctx.hyp()) + " |- " + c.show(goal);
}

// ---- topes and points ----

tope::Cube Checker::point_cube(const TriContext& ctx, const Expr& e) {
  try {
    return tope::infer_cube(ctx.cube_context(), to_point(e));
  } catch (const tope::TopeError& err) {
    if (err.kind() == tope::TopeError::Kind::CubeMismatch)
      fail(DiagKind::TypeMismatch, ctx, e, std::string(err.what()) + " in point " + show(e));
    fail(DiagKind::ScopeError, ctx, e, std::string(err.what()) + " in point " + show(e));
  }
}

tope::Tope Checker::tope_of(const TriContext& ctx, const Expr& e) {
  SpanGuard g(*this, e);
  switch (e->tag) {
    case Tag::Top:
    case Tag::Bot: break;
    case Tag::And:
    case Tag::Or:
      tope_of(ctx, e->kids[0]);
      tope_of(ctx, e->kids[1]);
      break;
    case Tag::Le: {
      auto c1 = point_cube(ctx, e->kids[0]), c2 = point_cube(ctx, e->kids[1]);
      if (c1 != tope::Cube::interval() || c2 != tope::Cube::interval())
        fail(DiagKind::TypeMismatch, ctx, e, "<= compares points of 2, got " + c1.str() + " and " + c2.str());
      break;
    }
    case Tag::TEq: {
      auto c1 = point_cube(ctx, e->kids[0]), c2 = point_cube(ctx, e->kids[1]);
      if (c1 != c2) fail(DiagKind::TypeMismatch, ctx, e, "=== between points of " + c1.str() + " and " + c2.str());
      break;
    }
    default: fail(DiagKind::TypeMismatch, ctx, e, "expected a tope, found " + show(e));
  }
  return to_tope(e);
}

// ---- checking ----

void Checker::check_type(const TriContext& ctx, const Expr& e) {
  static const Expr kU = mk::universe();
  check(ctx, e, kU);
}

void Checker::check(const TriContext& ctx, const Expr& e, const Expr& type) {
  SpanGuard g(*this, e);
  if (!consistent(ctx)) return;
  Expr t = whnf(ctx, type);
  if (auto c = stuck_case(t)) {
    for (std::size_t i = 0; i + 1 < (*c)->kids.size(); i += 2) {
      TriContext bi = ctx.with_hyp((*c)->kids[i]);
      if (consistent(bi)) check(bi, e, type);
    }
    return;
  }
  switch (e->tag) {
    case Tag::Lam: check_lam(ctx, e, t); return;
    case Tag::Pair:
      if (t->tag != Tag::Sigma)
        fail(DiagKind::TypeMismatch, ctx, e, "a pair was given where a non-pair type is expected", show(e), show(t));
      check(ctx, e->kids[0], t->kids[0]);
      check(ctx, e->kids[1], subst(t->kids[1], t->name, e->kids[0]));
      return;
    case Tag::Refl:
      if (t->tag != Tag::Id)
        fail(DiagKind::TypeMismatch, ctx, e, "refl was given where a non-identity type is expected", "Id _ _ _",
             show(t));
      if (!equal(ctx, t->kids[0], t->kids[1], t->kids[2]))
        fail(DiagKind::TypeMismatch, ctx, e, "refl needs the two endpoints to be judgmentally equal",
             show(t->kids[1]), show(t->kids[2]));
      return;
    case Tag::Case: check_cases(ctx, e, &type, nullptr); return;
    default: break;
  }
  Expr inferred = infer(ctx, e);
  static const Expr kU = mk::universe();
  if (!equal(ctx, kU, inferred, type))
    fail(DiagKind::TypeMismatch, ctx, e, "type mismatch for " + show(e), show(inferred), show(type));
}

void Checker::check_lam(const TriContext& ctx, const Expr& e, const Expr& t) {
  const Expr& body = e->kids[0];
  if (t->tag == Tag::Pi) {
    if (e->pat->is_pair())
      fail(DiagKind::TypeMismatch, ctx, e, "a tuple pattern binds cube points, but a function type is expected",
           show(e), show(t));
    std::string x = fresh(ctx, e->pat->name());
    Expr v = mk::var(x);
    check(ctx.with_var(x, t->kids[0]), subst(body, e->pat->name(), v), subst(t->kids[1], t->name, v));
    return;
  }
  if (t->tag != Tag::Ext)
    fail(DiagKind::TypeMismatch, ctx, e, "a lambda was given where a non-function type is expected", show(e),
         show(t));
  if (!pattern_fits(e->pat, t->cube))
    fail(DiagKind::TypeMismatch, ctx, e, "pattern " + print_pattern(e->pat) + " does not fit the cube " + t->cube.str());
  TriContext c2 = ctx;
  Expr c = bind_pattern(c2, e->pat, t->cube);
  TriContext cpsi = c2.with_hyp(instantiate(t->kids[0], t->pat, c));
  Expr fam = instantiate(t->kids[1], t->pat, c);
  Expr b = instantiate(body, e->pat, c);
  check(cpsi, b, fam);
  const Expr& phi = t->kids[2];
  if (phi->tag == Tag::Bot || t->kids.size() < 4 || !t->kids[3]) return;
  Expr phic = instantiate(phi, t->pat, c);
  Expr ac = instantiate(t->kids[3], t->pat, c);
  for (auto& branch : dnf(phic, cpsi, e)) {
    std::vector<Expr> hyps = cpsi.hyps();
    Expr bt = branch.empty() ? mk::top() : branch[0];
    for (std::size_t i = 1; i < branch.size(); ++i) bt = mk::conj(bt, branch[i]);
    hyps.insert(hyps.end(), branch.begin(), branch.end());
    TriContext cb = cpsi.with_hyps(std::move(hyps));
    if (!consistent(cb)) continue;
    if (!equal(cb, fam, b, ac))
      fail(DiagKind::BoundaryMismatch, ctx, e, "boundary condition fails on the branch " + show(bt),
           show(whnf(cb, b)), show(whnf(cb, ac)));
  }
}

void Checker::check_cases(const TriContext& ctx, const Expr& e, const Expr* type, std::vector<Expr>* branch_types) {
  const auto& k = e->kids;
  Expr cover;
  for (std::size_t i = 0; i + 1 < k.size(); i += 2) {
    tope_of(ctx, k[i]);
    cover = cover ? mk::disj(cover, k[i]) : k[i];
  }
  if (!cover) fail(DiagKind::TypeMismatch, ctx, e, "empty case analysis");
  if (!entails(ctx, cover))
    fail(DiagKind::TopeUnsolved, ctx, e, "case branches do not cover the context", {}, {},
         sequent_text(ctx, cover, *this));
  static const Expr kU = mk::universe();
  std::vector<Expr> types;
  for (std::size_t i = 0; i + 1 < k.size(); i += 2) {
    TriContext bi = ctx.with_hyp(k[i]);
    if (!consistent(bi)) {
      types.push_back(kU);
      continue;
    }
    if (type) check(bi, k[i + 1], *type);
    else types.push_back(infer(bi, k[i + 1]));
  }
  for (std::size_t i = 0; i + 1 < k.size(); i += 2)
    for (std::size_t j = i + 2; j + 1 < k.size(); j += 2) {
      TriContext bij = ctx.with_hyp(k[i]).with_hyp(k[j]);
      if (!consistent(bij)) continue;
      Expr ty = type ? *type : types[i / 2];
      if (!type && !equal(bij, kU, types[i / 2], types[j / 2]))
        fail(DiagKind::TypeMismatch, ctx, k[j + 1], "case branches have different types where they overlap",
             show(types[i / 2]), show(types[j / 2]));
      if (!equal(bij, ty, k[i + 1], k[j + 1]))
        fail(DiagKind::BoundaryMismatch, ctx, k[j + 1],
             "case branches disagree where " + show(k[i]) + " and " + show(k[j]) + " overlap", show(k[i + 1]),
             show(k[j + 1]));
    }
  if (branch_types) *branch_types = std::move(types);
}

void Checker::check_ext_formation(const TriContext& ctx, const Expr& e) {
  if (!pattern_fits(e->pat, e->cube))
    fail(DiagKind::TypeMismatch, ctx, e, "pattern " + print_pattern(e->pat) + " does not fit the cube " + e->cube.str());
  TriContext c2 = ctx;
  Expr c = bind_pattern(c2, e->pat, e->cube);
  Expr psi = instantiate(e->kids[0], e->pat, c);
  Expr phi = instantiate(e->kids[2], e->pat, c);
  tope_of(c2, psi);
  tope_of(c2, phi);
  if (!entails(c2.with_hyp(phi), psi))
    fail(DiagKind::TopeUnsolved, ctx, e->kids[2], "the boundary tope is not contained in the shape", {}, {},
         sequent_text(c2.with_hyp(phi), psi, *this));
  TriContext cpsi = c2.with_hyp(psi);
  Expr fam = instantiate(e->kids[1], e->pat, c);
  check_type(cpsi, fam);
  if (phi->tag == Tag::Bot) return;
  if (e->kids.size() < 4 || !e->kids[3]) fail(DiagKind::TypeMismatch, ctx, e, "boundary tope without boundary term");
  check(cpsi.with_hyp(phi), instantiate(e->kids[3], e->pat, c), fam);
}

// ---- inference ----

Expr Checker::infer(const TriContext& ctx, const Expr& e) {
  SpanGuard g(*this, e);
  static const Expr kU = mk::universe();
  switch (e->tag) {
    case Tag::Var: {
      if (const auto* en = ctx.lookup(e->name)) {
        if (en->is_cube) fail(DiagKind::ScopeError, ctx, e, "cube variable '" + e->name + "' used as a term");
        return en->type;
      }
      auto gl = scope_.find(e->name);
      if (!gl) fail(DiagKind::ScopeError, ctx, e, "unknown name '" + e->name + "'");
      if (gl->is_shape) fail(DiagKind::ScopeError, ctx, e, "shape '" + e->name + "' used as a term");
      if (gl->tag == LedgerTag::TheoremStated)
        fail(DiagKind::ScopeError, ctx, e, "'" + e->name + "' is a stated theorem without proof and cannot be used");
      return gl->type;
    }
    case Tag::Universe:
    case Tag::UnitType: return kU;
    case Tag::UnitVal: return mk::unit_type();
    case Tag::Pi:
    case Tag::Sigma: {
      check_type(ctx, e->kids[0]);
      std::string x = fresh(ctx, e->name);
      check_type(ctx.with_var(x, e->kids[0]), subst(e->kids[1], e->name, mk::var(x)));
      return kU;
    }
    case Tag::Id:
      check_type(ctx, e->kids[0]);
      check(ctx, e->kids[1], e->kids[0]);
      check(ctx, e->kids[2], e->kids[0]);
      return kU;
    case Tag::Ext: check_ext_formation(ctx, e); return kU;
    case Tag::App: return infer_app(ctx, e);
    case Tag::Fst:
    case Tag::Snd: {
      Expr t = whnf(ctx, infer(ctx, e->kids[0]));
      if (t->tag != Tag::Sigma)
        fail(DiagKind::TypeMismatch, ctx, e, "projection from a term whose type is not a Σ-type", show(t), "Sigma _, _");
      if (e->tag == Tag::Fst) return t->kids[0];
      return subst(t->kids[1], t->name, mk::fst(e->kids[0]));
    }
    case Tag::J: {
      const auto& k = e->kids;
      check_type(ctx, k[0]);
      check(ctx, k[1], k[0]);
      std::string y = fresh(ctx, "y", {k[0], k[1]});
      Expr motive = mk::pi(y, k[0], mk::arrow(mk::id(k[0], k[1], mk::var(y)), kU));
      check(ctx, k[2], motive);
      check(ctx, k[3], mk::app(mk::app(k[2], k[1]), mk::refl()));
      check(ctx, k[4], k[0]);
      check(ctx, k[5], mk::id(k[0], k[1], k[4]));
      return mk::app(mk::app(k[2], k[4]), k[5]);
    }
    case Tag::Ann:
      check_type(ctx, e->kids[1]);
      check(ctx, e->kids[0], e->kids[1]);
      return e->kids[1];
    case Tag::Case: {
      std::vector<Expr> types;
      check_cases(ctx, e, nullptr, &types);
      std::vector<Expr> kids;
      for (std::size_t i = 0; i + 1 < e->kids.size(); i += 2) {
        kids.push_back(e->kids[i]);
        kids.push_back(types[i / 2]);
      }
      return mk::cases(std::move(kids), e->span);
    }
    case Tag::Lam:
    case Tag::Pair:
    case Tag::Refl:
      fail(DiagKind::AnnotationRequired, ctx, e,
           "cannot infer the type of " + show(e) + "; add an annotation (e : T)");
    case Tag::ShapeApp: fail(DiagKind::ScopeError, ctx, e, "unknown shape '" + e->name + "'");
    default: fail(DiagKind::TypeMismatch, ctx, e, "a cube point or tope cannot be used as a term: " + show(e));
  }
}

Expr Checker::infer_app(const TriContext& ctx, const Expr& e) {
  const Expr& f = e->kids[0];
  const Expr& arg = e->kids[1];
  Expr ft = whnf(ctx, infer(ctx, f));
  if (ft->tag == Tag::Pi) {
    check(ctx, arg, ft->kids[0]);
    return subst(ft->kids[1], ft->name, arg);
  }
  if (ft->tag == Tag::Ext) {
    tope::Cube c = point_cube(ctx, arg);
    if (c != ft->cube)
      fail(DiagKind::TypeMismatch, ctx, arg, "expected a point of " + ft->cube.str() + ", got a point of " + c.str());
    Expr psi = instantiate(ft->kids[0], ft->pat, arg);
    if (!entails(ctx, psi))
      fail(DiagKind::TopeUnsolved, ctx, arg, "the point " + show(arg) + " is not known to lie in the shape", {}, {},
           sequent_text(ctx, psi, *this));
    return instantiate(ft->kids[1], ft->pat, arg);
  }
  fail(DiagKind::TypeMismatch, ctx, e, "applying a term whose type is not a function type", show(ft), "a function type");
}

// ---- declarations ----

namespace {

CheckError located(CheckError err, const RawDecl& d, const std::string& file) {
  err.diag().decl = d.name;
  err.diag().file = file;
  if (!err.diag().span.valid()) err.diag().span = d.name_span;
  return err;
}

[[noreturn]] void decl_fail(DiagKind k, const RawDecl& d, const std::string& file, const Span& span, std::string msg) {
  Diagnostic diag;
  diag.kind = k;
  diag.decl = d.name;
  diag.file = file;
  diag.span = span.valid() ? span : d.name_span;
  diag.message = std::move(msg);
  throw CheckError(std::move(diag));
}

Expr resolve(const Expr& e, const GlobalScope& scope, const RawDecl& d, const std::string& file) {
  try {
    return resolve_shapes(e, scope.shapes());
  } catch (const ShapeError& err) {
    decl_fail(DiagKind::ScopeError, d, file, err.span(), err.what());
  }
}

}  // namespace

ShapeDef check_shape_decl(const GlobalScope& scope, const RawDecl& d, const std::string& file) {
  auto n = std::make_shared<Node>(*mk::ext(d.shape_pat, d.shape_cube, d.shape_tope, mk::universe(), mk::bot(), nullptr,
                                           d.span));
  n->cube_pending = d.shape_cube_pending;
  Expr ext = resolve(n, scope, d, file);
  ShapeDef def{d.name, d.shape_pat, ext->cube, ext->kids[0]};
  Checker ch(scope);
  try {
    TriContext ctx;
    for (const auto& [name, cube] : tope::pattern_context(to_point(pattern_point(d.shape_pat)), ext->cube))
      ctx = ctx.with_cube(name, cube);
    ch.tope_of(ctx, def.constraint);
  } catch (CheckError& err) {
    throw located(std::move(err), d, file);
  } catch (const tope::TopeError& err) {
    decl_fail(DiagKind::ScopeError, d, file, d.span, err.what());
  }
  const ShapeTable& builtin = ShapeTable::builtin();
  if (const ShapeDef* b = builtin.find(d.name)) {
    bool same = b->cube == def.cube && shape_included(b->to_solver(), def.to_solver()).entailed &&
                shape_included(def.to_solver(), b->to_solver()).entailed;
    if (!same)
      decl_fail(DiagKind::ScopeError, d, file, d.name_span,
                "shape '" + d.name + "' differs from the built-in shape of the same name");
    def.name = builtin.canonical(d.name);
    return def;
  }
  if (scope.contains(d.name)) decl_fail(DiagKind::ScopeError, d, file, d.name_span, "'" + d.name + "' is already declared");
  return def;
}

GlobalEntry check_decl(const GlobalScope& scope, const RawDecl& d, const std::string& file, const CheckOptions& opts,
                       const std::set<std::string>* ledger) {
  if (scope.contains(d.name)) {
    auto prev = scope.find(d.name);
    std::string where = prev && !prev->file.empty() ? " (in " + prev->file + ")" : "";
    decl_fail(DiagKind::ScopeError, d, file, d.name_span, "'" + d.name + "' is already declared" + where);
  }
  if (d.kind == DeclKind::Postulate && (!ledger || !ledger->count(d.name)))
    decl_fail(DiagKind::UnledgeredAxiom, d, file, d.name_span,
              "postulate '" + d.name + "' is not listed in the axiom ledger");
  Expr type = resolve(d.full_type(), scope, d, file);
  std::optional<Expr> body;
  if (auto b = d.full_body()) body = resolve(*b, scope, d, file);
  Checker ch(scope, opts);
  try {
    TriContext ctx;
    ch.check_type(ctx, type);
    if (body) ch.check(ctx, *body, type);
  } catch (CheckError& err) {
    throw located(std::move(err), d, file);
  }
  GlobalEntry e;
  e.name = d.name;
  e.type = type;
  e.value = body;
  e.file = file;
  e.span = d.span;
  switch (d.kind) {
    case DeclKind::Definition: e.tag = LedgerTag::Definition; break;
    case DeclKind::Postulate: e.tag = LedgerTag::Axiom; break;
    default: e.tag = body ? LedgerTag::TheoremProved : LedgerTag::TheoremStated;
  }
  return e;
}

}  // namespace sstt
