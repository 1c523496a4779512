#pragma once

// Core syntax shared by all three layers. Cube points and topes are ordinary
// nodes of the same tree so that one capture-avoiding substitution serves
// typed variables and cube variables alike; the checker decides by context
// which layer a variable belongs to.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "sstt/tope.hpp"

namespace sstt {

struct Span {
  std::uint32_t begin = 0, end = 0;  // byte offsets, half open
  std::uint32_t line = 0, col = 0;   // 1-based; 0 when synthesized
  std::uint32_t end_line = 0, end_col = 0;
  bool valid() const { return line != 0; }
  bool contains(const Span& o) const { return begin <= o.begin && o.end <= end; }
};

enum class Tag {
  Var,
  Universe,
  UnitType,
  UnitVal,
  Pi,
  Lam,
  App,
  Sigma,
  Pair,
  Fst,
  Snd,
  Id,
  Refl,
  J,
  Ext,
  Case,
  Ann,
  // cube points
  Zero,
  One,
  CubeStar,
  // topes
  Top,
  Bot,
  And,
  Or,
  Le,
  TEq,
  // named shape applied to a point; removed by shape resolution
  ShapeApp,
};

class PatternNode;
using Pattern = std::shared_ptr<const PatternNode>;

/// Binder of a lambda or an extension type: one name or a nested tuple.
class PatternNode {
 public:
  static Pattern name(std::string n);
  static Pattern pair(Pattern l, Pattern r);

  bool is_pair() const { return left_ != nullptr; }
  const std::string& name() const { return name_; }
  const Pattern& left() const { return left_; }
  const Pattern& right() const { return right_; }

  void leaves(std::vector<std::string>& out) const;

 private:
  std::string name_;
  Pattern left_, right_;
};

class Node;
using Expr = std::shared_ptr<const Node>;

class Node {
 public:
  Tag tag;
  std::string name;  // Var, ShapeApp; binder of Pi / Sigma
  Pattern pat;       // Lam, Ext
  tope::Cube cube = tope::Cube::interval();  // Ext
  bool cube_pending = false;  // Ext written with a named shape, cube not yet known
  std::vector<Expr> kids;
  Span span;

  /// Free names (typed variables, cube variables and globals alike).
  const std::set<std::string>& free() const { return free_; }
  bool mentions(const std::string& n) const { return free_.count(n) != 0; }

  Node(Tag t, std::string n, Pattern p, std::vector<Expr> k, Span s);

 private:
  std::set<std::string> free_;
};

// Constructors. Child layout per tag:
//   Pi / Sigma : name, {domain, codomain}
//   Lam        : pat, {body}
//   App        : {fun, arg}        Pair : {a, b}       Fst / Snd : {p}
//   Id         : {A, a, b}         J    : {A, a, C, d, b, p}
//   Ext        : pat, cube, {shape tope, family, boundary tope, boundary term?}
//   Case       : {tope1, term1, tope2, term2, ...}
//   Ann        : {term, type}      And / Or / Le / TEq : {l, r}
//   ShapeApp   : name, {point}
namespace mk {
Expr var(std::string n, Span s = {});
Expr universe(Span s = {});
Expr unit_type(Span s = {});
Expr unit_val(Span s = {});
Expr pi(std::string x, Expr a, Expr b, Span s = {});
Expr arrow(Expr a, Expr b, Span s = {});
Expr lam(Pattern p, Expr body, Span s = {});
Expr lam(std::string x, Expr body, Span s = {});
Expr app(Expr f, Expr a, Span s = {});
Expr apps(Expr f, std::vector<Expr> args);
Expr sigma(std::string x, Expr a, Expr b, Span s = {});
Expr pair(Expr a, Expr b, Span s = {});
Expr fst(Expr p, Span s = {});
Expr snd(Expr p, Span s = {});
Expr id(Expr a, Expr x, Expr y, Span s = {});
Expr refl(Span s = {});
Expr j(Expr a, Expr x, Expr c, Expr d, Expr y, Expr p, Span s = {});
Expr ext(Pattern p, tope::Cube cube, Expr shape, Expr family, Expr btope, Expr bterm, Span s = {});
Expr cases(std::vector<Expr> topes_and_terms, Span s = {});
Expr ann(Expr e, Expr t, Span s = {});
Expr zero(Span s = {});
Expr one(Span s = {});
Expr cube_star(Span s = {});
Expr top(Span s = {});
Expr bot(Span s = {});
Expr conj(Expr l, Expr r, Span s = {});
Expr disj(Expr l, Expr r, Span s = {});
Expr le(Expr l, Expr r, Span s = {});
Expr teq(Expr l, Expr r, Span s = {});
Expr shape_app(std::string name, Expr point, Span s = {});
}  // namespace mk

/// Same node with different children (keeps tag, binder data and span).
Expr rebuild(const Expr& e, std::vector<Expr> kids);

bool is_tope(const Expr& e);
bool is_point_syntax(const Expr& e);  // 0, 1, (), or pairs/projections thereof

/// The point denoted by a pattern, e.g. (t1, t2).
Expr pattern_point(const Pattern& p);

/// Capture-avoiding simultaneous substitution.
using Subst = std::map<std::string, Expr>;
Expr substitute(const Expr& e, const Subst& s);
Expr subst(const Expr& e, const std::string& x, const Expr& v);

/// Binds the leaves of `p` to the matching components of `point`; projections
/// of explicit pairs are reduced.
Subst match_pattern(const Pattern& p, const Expr& point);
Expr instantiate(const Expr& body, const Pattern& p, const Expr& point);

/// Smart projections on points: fst (a, b) => a.
Expr project_fst(const Expr& p);
Expr project_snd(const Expr& p);

bool alpha_equal(const Expr& a, const Expr& b);
bool alpha_equal(const Pattern& a, const Pattern& b);

/// A name based on `base` that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Rename a pattern's leaves away from `avoid`; returns the renaming applied.
Pattern freshen(const Pattern& p, const std::set<std::string>& avoid, Subst& renaming);

// Conversion to the tope solver's representation. Throws tope::TopeError
// (kind Scope) if the expression is not a point / tope.
tope::Point to_point(const Expr& e);
tope::Tope to_tope(const Expr& e);
Expr from_point(const tope::Point& p);

}  // namespace sstt
