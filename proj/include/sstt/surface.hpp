#pragma once

// Concrete syntax: lexer, parser and printer for `.sstt` sources.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sstt/expr.hpp"
#include "sstt/shapes.hpp"
#include "sstt/tope.hpp"

namespace sstt {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, Span span, std::set<std::string> expected = {});
  const Span& span() const { return span_; }
  const std::set<std::string>& expected() const { return expected_; }
  /// Message without location, e.g. "unexpected ')'; expected one of: ..."
  const std::string& detail() const { return detail_; }

 private:
  Span span_;
  std::set<std::string> expected_;
  std::string detail_;
};

enum class DeclKind { Definition, Postulate, Theorem, Shape };
const char* decl_kind_name(DeclKind k);

/// One parameter group of a declaration telescope.
struct Param {
  enum class Kind { Typed, Cube };
  Kind kind = Kind::Typed;
  std::vector<std::string> names;  // Typed
  Expr type;                       // Typed
  Pattern pat;                     // Cube
  tope::Cube cube = tope::Cube::interval();
  bool cube_pending = false;       // `{t : ShapeName}`
  Expr tope;                       // Cube: constraint on the pattern
  Span span;
};

struct RawDecl {
  DeclKind kind = DeclKind::Definition;
  std::string name;
  Span span;       // whole declaration
  Span name_span;
  std::vector<Param> params;
  Expr type;                 // stated type (null for shapes)
  std::optional<Expr> body;  // null for postulates and stated theorems
  // `shape Name := {pat : I | constraint}`
  Pattern shape_pat;
  tope::Cube shape_cube = tope::Cube::interval();
  bool shape_cube_pending = false;
  Expr shape_tope;

  /// The telescope folded into the stated type (Pi / extension types) and
  /// into the body (lambdas).
  Expr full_type() const;
  std::optional<Expr> full_body() const;
};

struct SourceModule {
  std::string path;
  std::string text;
  std::vector<RawDecl> decls;
};

/// Parses a whole module. Declaration names must be unique within it.
SourceModule parse_module(const std::string& text, const std::string& path = "<input>");

/// Parses a single expression (the whole input must be consumed).
Expr parse_expr(const std::string& text);

/// `vars | hyp |- goal`; bare variables range over 2, `(p : 2 * 2)` groups
/// give other cubes, and the hypothesis part may be omitted. Shape names of
/// `shapes` may be used as tope predicates.
tope::Sequent parse_sequent(const std::string& text, const ShapeTable& shapes = ShapeTable::builtin());

struct PrintOptions {
  bool unicode = false;
  /// Extension binders whose constraint is a known shape are printed by name.
  const ShapeTable* shapes = &ShapeTable::builtin();
};

std::string print_expr(const Expr& e, const PrintOptions& opts = {});
std::string print_pattern(const Pattern& p, bool unicode = false);
/// {pat : I | constraint}
std::string print_shape(const ShapeDef& s, bool unicode = false);

/// Line and column (1-based) of a byte offset.
std::pair<std::uint32_t, std::uint32_t> line_col(const std::string& text, std::uint32_t offset);

}  // namespace sstt
