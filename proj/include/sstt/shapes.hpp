#pragma once

// Named shapes {pat : I | constraint} and their expansion inside expressions.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sstt/expr.hpp"
#include "sstt/tope.hpp"

namespace sstt {

struct ShapeDef {
  std::string name;
  Pattern pat;
  tope::Cube cube = tope::Cube::interval();
  Expr constraint;  // fully expanded tope over the leaves of `pat`

  /// Constraint with the binder replaced by `point`.
  Expr at(const Expr& point) const;
  tope::Shape to_solver() const;
};

class ShapeError : public std::runtime_error {
 public:
  ShapeError(const std::string& msg, Span span) : std::runtime_error(msg), span_(span) {}
  const Span& span() const { return span_; }

 private:
  Span span_;
};

class ShapeTable {
 public:
  /// Delta0, Delta1, Delta2, BDelta1, BDelta2, Lambda21 and their unicode
  /// spellings Δ⁰ Δ¹ Δ² ∂Δ¹ ∂Δ² Λ²₁.
  static const ShapeTable& builtin();

  const ShapeDef* find(const std::string& name) const;
  /// Canonical name of the shape `name` refers to (resolving aliases).
  std::string canonical(const std::string& name) const;
  /// Unicode spelling, if the shape has one.
  std::optional<std::string> unicode_name(const std::string& canonical) const;

  void add(ShapeDef def);
  void add_alias(const std::string& alias, const std::string& canonical, bool preferred_unicode = false);

  /// Shapes in insertion order, without aliases.
  const std::vector<std::string>& names() const { return order_; }

 private:
  std::map<std::string, ShapeDef> defs_;
  std::map<std::string, std::string> alias_;
  std::map<std::string, std::string> unicode_;
  std::vector<std::string> order_;
};

/// Replaces shape predicates `S p` by the instantiated constraint and fills in
/// the cube of extension binders written `{pat : S}`. Bound variables shadow
/// shape names. Throws ShapeError for unknown shapes in binder position or a
/// pattern that does not fit the shape's cube.
Expr resolve_shapes(const Expr& e, const ShapeTable& table);

/// Checks that `pat` decomposes `cube` (a tuple pattern needs a product).
bool pattern_fits(const Pattern& pat, const tope::Cube& cube);

}  // namespace sstt
