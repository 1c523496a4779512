#include <algorithm>
#include <map>
#include <utility>

#include "lexer.hpp"
#include "sstt/surface.hpp"

namespace sstt {

namespace {

std::string with_expected(std::string msg, const std::set<std::string>& expected) {
  if (expected.empty()) return msg;
  msg += "; expected ";
  if (expected.size() > 1) msg += "one of ";
  bool first = true;
  for (const auto& e : expected) {
    if (!first) msg += ", ";
    msg += e;
    first = false;
  }
  return msg;
}

}  // namespace

ParseError::ParseError(std::string msg, Span span, std::set<std::string> expected)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.col) + ": " +
                         with_expected(msg, expected)),
      span_(span),
      expected_(std::move(expected)),
      detail_(with_expected(std::move(msg), expected_)) {}

const char* decl_kind_name(DeclKind k) {
  switch (k) {
    case DeclKind::Definition: return "def";
    case DeclKind::Postulate: return "postulate";
    case DeclKind::Theorem: return "thm";
    case DeclKind::Shape: return "shape";
  }
  return "?";
}

namespace {

using lex::Token;
using TK = Token::Kind;

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text), toks_(lex::tokenize(text)) {
    line_starts_.push_back(0);
    for (std::uint32_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') line_starts_.push_back(i + 1);
  }

  SourceModule module(const std::string& path) {
    SourceModule m;
    m.path = path;
    m.text = text_;
    std::map<std::string, Span> seen;
    while (!at_end()) {
      RawDecl d = decl();
      auto it = seen.find(d.name);
      if (it != seen.end())
        throw ParseError("duplicate declaration '" + d.name + "' (first declared at line " +
                             std::to_string(it->second.line) + ")",
                         d.name_span);
      seen.emplace(d.name, d.name_span);
      m.decls.push_back(std::move(d));
    }
    return m;
  }

  Expr whole_expr() {
    Expr e = expr();
    if (!at_end()) fail("end of input");
    return e;
  }

  tope::Sequent sequent(const ShapeTable& shapes) {
    tope::Sequent s;
    for (;;) {
      if (peek().kind == TK::Ident) {
        s.ctx.emplace_back(next().text, tope::Cube::interval());
      } else if (peek().sym("(")) {
        next();
        std::vector<std::string> names;
        while (peek().kind == TK::Ident) names.push_back(next().text);
        if (names.empty()) fail("variable name");
        expect_sym(":");
        tope::Cube c = cube();
        expect_sym(")");
        for (auto& n : names) s.ctx.emplace_back(std::move(n), c);
      } else {
        break;
      }
    }
    Expr hyp = mk::top();
    if (accept_sym("|")) hyp = expr();
    expect_sym("|-");
    Expr goal = expr();
    if (!at_end()) fail("end of input");
    hyp = resolve_shapes(hyp, shapes);
    goal = resolve_shapes(goal, shapes);
    s.hyp = to_tope(hyp);
    s.goal = to_tope(goal);
    return s;
  }

 private:
  const std::string& text_;
  std::vector<Token> toks_;
  std::vector<std::uint32_t> line_starts_;
  std::size_t pos_ = 0;
  std::size_t far_ = 0;
  std::set<std::string> expected_;

  // ---- token helpers ----

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == TK::End; }

  void note(const std::string& what) {
    if (pos_ > far_) {
      far_ = pos_;
      expected_.clear();
    }
    if (pos_ == far_) expected_.insert(what);
  }

  bool at_sym(const char* s) {
    if (peek().sym(s)) return true;
    note(std::string("'") + s + "'");
    return false;
  }
  bool at_kw(const char* s) {
    if (peek().kw(s)) return true;
    note(std::string("'") + s + "'");
    return false;
  }
  bool accept_sym(const char* s) {
    if (!at_sym(s)) return false;
    next();
    return true;
  }
  void expect_sym(const char* s) {
    if (!accept_sym(s)) fail();
  }
  std::string expect_ident(const char* what = "identifier") {
    if (peek().kind != TK::Ident) {
      note(what);
      fail();
    }
    return next().text;
  }

  Span span_of(std::uint32_t b, std::uint32_t e) const {
    Span s;
    s.begin = b;
    s.end = e;
    auto lc = [&](std::uint32_t off) {
      auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), off);
      std::uint32_t line = static_cast<std::uint32_t>(it - line_starts_.begin());
      std::uint32_t start = line_starts_[line - 1], col = 1;
      for (std::uint32_t i = start; i < off && i < text_.size(); ++i)
        if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
      return std::pair{line, col};
    };
    std::tie(s.line, s.col) = lc(b);
    std::tie(s.end_line, s.end_col) = lc(e);
    return s;
  }
  Span from(std::size_t start_tok) const {
    std::size_t last = pos_ > start_tok ? pos_ - 1 : start_tok;
    return span_of(toks_[start_tok].begin, toks_[last].end);
  }

  [[noreturn]] void fail(const std::string& what = {}) {
    if (!what.empty()) note(what);
    const Token& t = toks_[std::max(far_, pos_) < toks_.size() ? std::max(far_, pos_) : toks_.size() - 1];
    std::set<std::string> exp = far_ >= pos_ ? expected_ : std::set<std::string>{};
    throw ParseError("unexpected " + lex::describe(t), span_of(t.begin, t.end), exp);
  }

  // ---- declarations ----

  RawDecl decl() {
    std::size_t start = pos_;
    RawDecl d;
    if (at_kw("def")) d.kind = DeclKind::Definition;
    else if (at_kw("postulate")) d.kind = DeclKind::Postulate;
    else if (at_kw("thm")) d.kind = DeclKind::Theorem;
    else if (at_kw("shape")) d.kind = DeclKind::Shape;
    else fail("declaration");
    next();
    std::size_t name_tok = pos_;
    d.name = expect_ident("declaration name");
    d.name_span = from(name_tok);
    if (d.kind == DeclKind::Shape) {
      expect_sym(":=");
      expect_sym("{");
      Param p = cube_binder("}");
      d.shape_pat = p.pat;
      d.shape_cube = p.cube;
      d.shape_cube_pending = p.cube_pending;
      d.shape_tope = p.tope;
      d.span = from(start);
      return d;
    }
    for (;;) {
      if (peek().sym("(")) {
        d.params.push_back(typed_group());
      } else if (peek().sym("{")) {
        std::size_t ps = pos_;
        next();
        Param p = cube_binder("}");
        p.span = from(ps);
        d.params.push_back(std::move(p));
      } else {
        note("'('");
        note("'{'");
        break;
      }
    }
    expect_sym(":");
    d.type = expr();
    if (d.kind == DeclKind::Postulate) {
      if (peek().sym(":="))
        throw ParseError("postulate '" + d.name + "' cannot have a body", span_of(peek().begin, peek().end));
    } else if (d.kind == DeclKind::Definition) {
      expect_sym(":=");
      d.body = expr();
    } else if (accept_sym(":=")) {
      d.body = expr();
    }
    d.span = from(start);
    return d;
  }

  // `(x y : A)`
  Param typed_group() {
    std::size_t start = pos_;
    expect_sym("(");
    Param p;
    p.kind = Param::Kind::Typed;
    while (peek().kind == TK::Ident) p.names.push_back(next().text);
    if (p.names.empty()) fail("parameter name");
    expect_sym(":");
    p.type = expr();
    expect_sym(")");
    p.span = from(start);
    return p;
  }

  // After the opening brace (or `Pi (`): `pat : cube [| tope]` or
  // `pat : Shape [| tope]`, then the closing token.
  Param cube_binder(const char* close) {
    std::size_t start = pos_;
    Param p;
    p.kind = Param::Kind::Cube;
    p.pat = pattern();
    expect_sym(":");
    Expr extra;
    if (peek().kind == TK::Ident) {
      std::size_t st = pos_;
      std::string shape = next().text;
      p.cube_pending = true;
      p.tope = mk::shape_app(shape, pattern_point(p.pat), from(st));
    } else {
      p.cube = cube();
    }
    if (accept_sym("|")) {
      Expr t = expr();
      p.tope = p.tope ? mk::conj(p.tope, t, from(start)) : t;
    }
    if (!p.tope) p.tope = mk::top(from(start));
    expect_sym(close);
    p.span = from(start);
    return p;
  }

  Pattern pattern() {
    if (peek().kind == TK::Ident) return PatternNode::name(next().text);
    if (!accept_sym("(")) {
      note("pattern");
      fail();
    }
    std::vector<Pattern> parts{pattern()};
    while (accept_sym(",")) parts.push_back(pattern());
    expect_sym(")");
    if (parts.size() == 1) return parts[0];
    Pattern r = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) r = PatternNode::pair(parts[i], r);
    return r;
  }

  tope::Cube cube() {
    tope::Cube c = cube_atom();
    if (accept_sym("*")) return tope::Cube::product(c, cube());
    return c;
  }

  tope::Cube cube_atom() {
    if (peek().is(TK::Num, "2")) {
      next();
      return tope::Cube::interval();
    }
    if (peek().is(TK::Num, "1")) {
      next();
      return tope::Cube::unit();
    }
    if (accept_sym("(")) {
      tope::Cube c = cube();
      expect_sym(")");
      return c;
    }
    note("cube (2, 1 or a product)");
    fail();
  }

  // ---- expressions ----

  bool binder_group_ahead() const {
    if (!peek().sym("(")) return false;
    std::size_t k = 1;
    while (peek(k).kind == TK::Ident) ++k;
    return k > 1 && peek(k).sym(":");
  }

  Expr expr() {
    std::size_t start = pos_;
    if (peek().sym("\\")) return lambda();
    if (peek().kw("Pi") || peek().kw("Sigma")) {
      bool is_pi = next().text == "Pi";
      std::vector<Param> groups;
      do groups.push_back(typed_group());
      while (peek().sym("("));
      expect_sym(",");
      Expr body = expr();
      return fold_binders(groups, body, is_pi ? Tag::Pi : Tag::Sigma, start);
    }
    if (binder_group_ahead()) {
      std::size_t save = pos_;
      try {
        std::vector<Param> groups;
        do groups.push_back(typed_group());
        while (binder_group_ahead());
        if (peek().sym("->")) {
          next();
          Expr body = expr();
          return fold_binders(groups, body, Tag::Pi, start);
        }
        note("'->'");
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    Expr lhs = or_expr();
    if (accept_sym("->")) {
      Expr rhs = expr();
      return mk::arrow(lhs, rhs, from(start));
    }
    return lhs;
  }

  Expr fold_binders(const std::vector<Param>& groups, Expr body, Tag tag, std::size_t start) {
    Span s = from(start);
    for (auto g = groups.rbegin(); g != groups.rend(); ++g)
      for (auto n = g->names.rbegin(); n != g->names.rend(); ++n)
        body = tag == Tag::Pi ? mk::pi(*n, g->type, body, s) : mk::sigma(*n, g->type, body, s);
    return body;
  }

  Expr lambda() {
    std::size_t start = pos_;
    expect_sym("\\");
    std::vector<Pattern> pats;
    for (;;) {
      if (peek().kind == TK::Ident || peek().sym("(")) pats.push_back(pattern());
      else break;
    }
    if (pats.empty()) fail("lambda binder");
    expect_sym(".");
    Expr body = expr();
    Span s = from(start);
    for (auto p = pats.rbegin(); p != pats.rend(); ++p) body = mk::lam(*p, body, s);
    return body;
  }

  Expr or_expr() {
    std::size_t start = pos_;
    Expr e = and_expr();
    while (accept_sym("\\/")) e = mk::disj(e, and_expr(), from(start));
    return e;
  }

  Expr and_expr() {
    std::size_t start = pos_;
    Expr e = cmp_expr();
    while (accept_sym("/\\")) e = mk::conj(e, cmp_expr(), from(start));
    return e;
  }

  Expr cmp_expr() {
    std::size_t start = pos_;
    Expr e = prod_expr();
    if (accept_sym("<=")) return mk::le(e, prod_expr(), from(start));
    if (accept_sym("===")) return mk::teq(e, prod_expr(), from(start));
    return e;
  }

  Expr prod_expr() {
    std::size_t start = pos_;
    Expr e = app_expr();
    if (accept_sym("*")) return mk::sigma("_", e, prod_expr(), from(start));
    return e;
  }

  bool atom_ahead() {
    const Token& t = peek();
    switch (t.kind) {
      case TK::Ident: return true;
      case TK::Num: return t.text != "2";
      case TK::Kw:
        return t.text == "U" || t.text == "Unit" || t.text == "tt" || t.text == "refl" || t.text == "TOP" ||
               t.text == "BOT" || t.text == "cases";
      case TK::Sym: return t.text == "(" || t.text == "<";
      default: break;
    }
    note("expression");
    return false;
  }

  Expr app_expr() {
    std::size_t start = pos_;
    Expr head;
    if (peek().kw("fst") || peek().kw("snd")) {
      bool f = next().text == "fst";
      Expr a = atom();
      head = f ? mk::fst(a, from(start)) : mk::snd(a, from(start));
    } else if (peek().kw("Id")) {
      next();
      Expr a = atom(), x = atom(), y = atom();
      head = mk::id(a, x, y, from(start));
    } else if (peek().kw("J")) {
      next();
      Expr a = atom(), x = atom(), c = atom(), d = atom(), y = atom(), p = atom();
      head = mk::j(a, x, c, d, y, p, from(start));
    } else {
      head = atom();
    }
    while (atom_ahead()) {
      Expr arg = atom();
      head = mk::app(head, arg, from(start));
    }
    return head;
  }

  Expr atom() {
    std::size_t start = pos_;
    const Token& t = peek();
    switch (t.kind) {
      case TK::Ident:
        next();
        return mk::var(t.text, from(start));
      case TK::Num:
        if (t.text == "0") {
          next();
          return mk::zero(from(start));
        }
        if (t.text == "1") {
          next();
          return mk::one(from(start));
        }
        break;
      case TK::Kw:
        if (t.text == "U") return next(), mk::universe(from(start));
        if (t.text == "Unit") return next(), mk::unit_type(from(start));
        if (t.text == "tt") return next(), mk::unit_val(from(start));
        if (t.text == "refl") return next(), mk::refl(from(start));
        if (t.text == "TOP") return next(), mk::top(from(start));
        if (t.text == "BOT") return next(), mk::bot(from(start));
        if (t.text == "cases") return cases();
        break;
      case TK::Sym:
        if (t.text == "(") return parens();
        if (t.text == "<") return ext();
        break;
      default: break;
    }
    note("expression");
    fail();
  }

  Expr parens() {
    std::size_t start = pos_;
    expect_sym("(");
    if (accept_sym(")")) return mk::cube_star(from(start));
    Expr e = expr();
    if (accept_sym(":")) {
      Expr ty = expr();
      expect_sym(")");
      return mk::ann(e, ty, from(start));
    }
    std::vector<Expr> parts{e};
    while (accept_sym(",")) parts.push_back(expr());
    expect_sym(")");
    if (parts.size() == 1) return e;
    Span s = from(start);
    Expr r = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) r = mk::pair(parts[i], r, s);
    return r;
  }

  Expr cases() {
    std::size_t start = pos_;
    next();
    expect_sym("{");
    std::vector<Expr> kids;
    do {
      kids.push_back(expr());
      expect_sym("=>");
      kids.push_back(expr());
    } while (accept_sym("|"));
    expect_sym("}");
    return mk::cases(std::move(kids), from(start));
  }

  Expr ext() {
    std::size_t start = pos_;
    expect_sym("<");
    Param binder;
    if (accept_sym("{")) {
      binder = cube_binder("}");
    } else if (at_kw("Pi")) {
      next();
      expect_sym("(");
      binder = cube_binder(")");
    } else {
      fail();
    }
    expect_sym("->");
    Expr family = expr();
    Expr btope = mk::bot();
    Expr bterm;
    if (accept_sym("[")) {
      std::size_t bstart = pos_;
      std::vector<Expr> kids;
      do {
        kids.push_back(expr());
        expect_sym("|->");
        kids.push_back(expr());
      } while (accept_sym(","));
      expect_sym("]");
      if (kids.size() == 2) {
        btope = kids[0];
        bterm = kids[1];
      } else {
        Span s = from(bstart);
        btope = kids[0];
        for (std::size_t i = 2; i < kids.size(); i += 2) btope = mk::disj(btope, kids[i], s);
        bterm = mk::cases(kids, s);
      }
    }
    expect_sym(">");
    Expr e = mk::ext(binder.pat, binder.cube, binder.tope, family, btope, bterm, from(start));
    if (binder.cube_pending) {
      auto n = std::make_shared<Node>(*e);
      n->cube_pending = true;
      return n;
    }
    return e;
  }
};

}  // namespace

SourceModule parse_module(const std::string& text, const std::string& path) {
  Parser p(text);
  return p.module(path);
}

Expr parse_expr(const std::string& text) {
  Parser p(text);
  return p.whole_expr();
}

tope::Sequent parse_sequent(const std::string& text, const ShapeTable& shapes) {
  Parser p(text);
  return p.sequent(shapes);
}

Expr RawDecl::full_type() const {
  Expr t = type;
  for (auto p = params.rbegin(); p != params.rend(); ++p) {
    Span s = p->span;
    s.end = type->span.end;
    s.end_line = type->span.end_line;
    s.end_col = type->span.end_col;
    if (p->kind == Param::Kind::Typed) {
      for (auto n = p->names.rbegin(); n != p->names.rend(); ++n) t = mk::pi(*n, p->type, t, s);
    } else {
      auto n = std::make_shared<Node>(*mk::ext(p->pat, p->cube, p->tope, t, mk::bot(), nullptr, s));
      n->cube_pending = p->cube_pending;
      t = n;
    }
  }
  return t;
}

std::optional<Expr> RawDecl::full_body() const {
  if (!body) return std::nullopt;
  Expr b = *body;
  for (auto p = params.rbegin(); p != params.rend(); ++p) {
    Span s = p->span;
    s.end = b->span.end;
    s.end_line = b->span.end_line;
    s.end_col = b->span.end_col;
    if (p->kind == Param::Kind::Typed) {
      for (auto n = p->names.rbegin(); n != p->names.rend(); ++n) b = mk::lam(*n, b, s);
    } else {
      b = mk::lam(p->pat, b, s);
    }
  }
  return b;
}

}  // namespace sstt
