#include <string>

#include "sstt/surface.hpp"

namespace sstt {

namespace {

// Precedence levels, loosest first.
enum Prec { kBinder = 0, kOr, kAnd, kCmp, kProd, kApp, kAtom };

struct Printer {
  const PrintOptions& o;

  const char* sym(const char* ascii, const char* uni) const { return o.unicode ? uni : ascii; }

  std::string paren(bool wrap, std::string s) const { return wrap ? "(" + s + ")" : s; }

  std::string pattern(const Pattern& p) const { return print_pattern(p, o.unicode); }

  // Name of a known shape whose constraint is `psi` (exactly, or as the left
  // conjunct); `rest` receives the remaining conjunct.
  std::optional<std::string> shape_name(const Expr& ext, Expr& rest) const {
    if (!o.shapes) return std::nullopt;
    const Expr& psi = ext->kids[0];
    for (const auto& n : o.shapes->names()) {
      const ShapeDef* s = o.shapes->find(n);
      if (!s || s->cube != ext->cube || !alpha_equal(s->pat, ext->pat)) continue;
      // Only patterns of the same shape as the definition's binder.
      Expr inst = s->at(pattern_point(ext->pat));
      std::string name = n;
      if (o.unicode)
        if (auto u = o.shapes->unicode_name(n)) name = *u;
      if (alpha_equal(inst, psi)) {
        rest = nullptr;
        return name;
      }
      if (psi->tag == Tag::And && alpha_equal(inst, psi->kids[0])) {
        rest = psi->kids[1];
        return name;
      }
    }
    return std::nullopt;
  }

  // Whether the printed form of `e` begins with an annotation `(a : T)`.
  static bool starts_with_ann(Expr e) {
    for (;;) {
      switch (e->tag) {
        case Tag::Ann: return true;
        case Tag::App:
        case Tag::And:
        case Tag::Or:
        case Tag::Le:
        case Tag::TEq: e = e->kids[0]; break;
        case Tag::Sigma:
          if (e->name != "_" && e->kids[1]->mentions(e->name)) return false;
          e = e->kids[0];
          break;
        default: return false;
      }
    }
  }

  std::string binder(const Expr& e) const {
    std::string out = "{" + pattern(e->pat) + " : ";
    if (e->cube_pending) {
      // unresolved `{pat : S | extra}`
      const Expr& psi = e->kids[0];
      Expr head = psi->tag == Tag::And ? psi->kids[0] : psi;
      out += head->name;
      if (psi->tag == Tag::And) out += " | " + go(psi->kids[1], kBinder);
      return out + "}";
    }
    Expr rest;
    if (auto name = shape_name(e, rest)) {
      out += *name;
      if (rest) out += " | " + go(rest, kBinder);
      return out + "}";
    }
    return out + e->cube.str(o.unicode) + " | " + go(e->kids[0], kBinder) + "}";
  }

  std::string go(const Expr& e, int ctx) const {
    switch (e->tag) {
      case Tag::Var: return e->name;
      case Tag::Universe: return "U";
      case Tag::UnitType: return "Unit";
      case Tag::UnitVal: return "tt";
      case Tag::Refl: return "refl";
      case Tag::Zero: return "0";
      case Tag::One: return "1";
      case Tag::CubeStar: return "()";
      case Tag::Top: return sym("TOP", "⊤");
      case Tag::Bot: return sym("BOT", "⊥");
      case Tag::Pi: {
        std::string s;
        if (e->name == "_" || !e->kids[1]->mentions(e->name)) {
          // an annotated domain would read back as a binder
          std::string dom = go(e->kids[0], kOr);
          if (starts_with_ann(e->kids[0])) dom = "(" + dom + ")";
          s = dom + sym(" -> ", " → ") + go(e->kids[1], kBinder);
        } else {
          s = "(" + e->name + " : " + go(e->kids[0], kBinder) + ")" + sym(" -> ", " → ") + go(e->kids[1], kBinder);
        }
        return paren(ctx > kBinder, s);
      }
      case Tag::Sigma: {
        if (e->name == "_" || !e->kids[1]->mentions(e->name))
          return paren(ctx > kProd, go(e->kids[0], kApp) + sym(" * ", " × ") + go(e->kids[1], kProd));
        return paren(ctx > kBinder, std::string(sym("Sigma", "Σ")) + " (" + e->name + " : " +
                                        go(e->kids[0], kBinder) + "), " + go(e->kids[1], kBinder));
      }
      case Tag::Lam: {
        std::string s = sym("\\", "λ");
        Expr b = e;
        bool first = true;
        while (b->tag == Tag::Lam) {
          if (!first) s += " ";
          s += pattern(b->pat);
          first = false;
          b = b->kids[0];
        }
        return paren(ctx > kBinder, s + ". " + go(b, kBinder));
      }
      case Tag::App:
        return paren(ctx > kApp, go(e->kids[0], kApp) + " " + go(e->kids[1], kAtom));
      case Tag::Fst:
      case Tag::Snd:
        return paren(ctx > kApp, std::string(e->tag == Tag::Fst ? "fst " : "snd ") + go(e->kids[0], kAtom));
      case Tag::Id:
        return paren(ctx > kApp, "Id " + go(e->kids[0], kAtom) + " " + go(e->kids[1], kAtom) + " " +
                                     go(e->kids[2], kAtom));
      case Tag::J: {
        std::string s = "J";
        for (const auto& k : e->kids) s += " " + go(k, kAtom);
        return paren(ctx > kApp, s);
      }
      case Tag::Pair: {
        std::string s = "(" + go(e->kids[0], kBinder);
        Expr r = e->kids[1];
        while (r->tag == Tag::Pair) {
          s += ", " + go(r->kids[0], kBinder);
          r = r->kids[1];
        }
        return s + ", " + go(r, kBinder) + ")";
      }
      case Tag::Ann: return "(" + go(e->kids[0], kBinder) + " : " + go(e->kids[1], kBinder) + ")";
      case Tag::Case: {
        std::string s = "cases {";
        for (std::size_t i = 0; i + 1 < e->kids.size(); i += 2) {
          s += i == 0 ? " " : " | ";
          s += go(e->kids[i], kBinder) + sym(" => ", " ⇒ ") + go(e->kids[i + 1], kBinder);
        }
        return s + " }";
      }
      case Tag::Ext: {
        std::string s = sym("<", "⟨") + binder(e) + sym(" -> ", " → ") + go(e->kids[1], kBinder);
        const Expr& bt = e->kids[2];
        const Expr& ba = e->kids.size() > 3 ? e->kids[3] : nullptr;
        if (ba || bt->tag != Tag::Bot) {
          s += " [" + go(bt, kBinder) + sym(" |-> ", " ↦ ");
          s += ba ? go(ba, kBinder) : std::string("tt");
          s += "]";
        }
        return s + sym(">", "⟩");
      }
      case Tag::And: return paren(ctx > kAnd, go(e->kids[0], kAnd) + sym(" /\\ ", " ∧ ") + go(e->kids[1], kCmp));
      case Tag::Or: return paren(ctx > kOr, go(e->kids[0], kOr) + sym(" \\/ ", " ∨ ") + go(e->kids[1], kAnd));
      case Tag::Le: return paren(ctx > kCmp, go(e->kids[0], kProd) + sym(" <= ", " ≤ ") + go(e->kids[1], kProd));
      case Tag::TEq: return paren(ctx > kCmp, go(e->kids[0], kProd) + sym(" === ", " ≡ ") + go(e->kids[1], kProd));
      case Tag::ShapeApp: return paren(ctx > kApp, e->name + " " + go(e->kids[0], kAtom));
    }
    return "?";
  }
};

}  // namespace

std::string print_pattern(const Pattern& p, bool unicode) {
  if (!p->is_pair()) return p->name();
  std::string s = "(" + print_pattern(p->left(), unicode);
  Pattern r = p->right();
  const char* sep = unicode ? "," : ", ";
  while (r->is_pair()) {
    s += sep + print_pattern(r->left(), unicode);
    r = r->right();
  }
  return s + sep + print_pattern(r, unicode) + ")";
}

std::string print_expr(const Expr& e, const PrintOptions& opts) {
  Printer p{opts};
  return p.go(e, kBinder);
}

std::string print_shape(const ShapeDef& s, bool unicode) {
  PrintOptions o;
  o.unicode = unicode;
  o.shapes = nullptr;
  Printer p{o};
  return "{" + print_pattern(s.pat, unicode) + " : " + s.cube.str(unicode) + " | " + p.go(s.constraint, kBinder) +
         "}";
}

}  // namespace sstt
