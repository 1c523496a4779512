#pragma once

// Bidirectional checking and typed conversion for the type layer.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "sstt/context.hpp"
#include "sstt/diagnostic.hpp"
#include "sstt/expr.hpp"
#include "sstt/shapes.hpp"
#include "sstt/surface.hpp"

namespace sstt {

enum class LedgerTag { Definition, Axiom, TheoremProved, TheoremStated };
const char* ledger_tag_name(LedgerTag t);

struct GlobalEntry {
  std::string name;
  Expr type;
  std::optional<Expr> value;  // definitions and proved theorems
  LedgerTag tag = LedgerTag::Definition;
  std::string file;
  Span span;
  bool is_shape = false;
};

/// Append-only table of checked declarations and named shapes. Reads may run
/// concurrently; appends are serialized.
class GlobalScope {
 public:
  GlobalScope();
  GlobalScope(const GlobalScope& o);
  GlobalScope& operator=(const GlobalScope& o);

  std::optional<GlobalEntry> find(const std::string& name) const;
  bool contains(const std::string& name) const;
  void add(GlobalEntry e);
  void add_shape(ShapeDef s, const std::string& file, Span span);

  ShapeTable shapes() const;
  std::vector<std::string> names() const;  // insertion order

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, GlobalEntry> entries_;
  std::vector<std::string> order_;
  ShapeTable shapes_;
};

struct CheckOptions {
  std::uint64_t fuel = 10000;  // definition unfoldings per declaration
};

class Checker {
 public:
  Checker(const GlobalScope& scope, CheckOptions opts = {});

  /// All of these throw CheckError.
  void check(const TriContext& ctx, const Expr& e, const Expr& type);
  Expr infer(const TriContext& ctx, const Expr& e);
  void check_type(const TriContext& ctx, const Expr& e);

  /// Judgmental equality of a and b at type `type` (null: compare
  /// structurally without eta).
  bool equal(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b);
  Expr whnf(const TriContext& ctx, const Expr& e);

  /// Ctx |- phi, memoized.
  bool entails(const TriContext& ctx, const Expr& phi);
  bool consistent(const TriContext& ctx);

  /// Validated conversion of a tope / point in the cube part of ctx.
  tope::Tope tope_of(const TriContext& ctx, const Expr& e);
  tope::Cube point_cube(const TriContext& ctx, const Expr& e);

  void reset_fuel() { fuel_left_ = opts_.fuel; }
  std::uint64_t fuel_used() const { return opts_.fuel - fuel_left_; }

  /// Print with the scope's shape names.
  std::string show(const Expr& e) const;

 private:
  struct SpanGuard;
  friend struct SpanGuard;

  [[noreturn]] void fail(DiagKind k, const TriContext& ctx, const Expr& at, std::string msg, std::string lhs = {},
                         std::string rhs = {}, std::string sequent = {});

  std::string fresh(const TriContext& ctx, const std::string& base, const std::vector<Expr>& avoid_in = {});
  // Binds the leaves of `pat` as cube variables of `cube` (renamed apart);
  // returns the point standing for the pattern.
  Expr bind_pattern(TriContext& ctx, const Pattern& pat, const tope::Cube& cube);

  Expr infer_app(const TriContext& ctx, const Expr& e);
  void check_lam(const TriContext& ctx, const Expr& e, const Expr& type);
  void check_cases(const TriContext& ctx, const Expr& e, const Expr* type, std::vector<Expr>* branch_types);
  void check_ext_formation(const TriContext& ctx, const Expr& e);

  std::optional<Expr> stuck_case(const Expr& e) const;
  Expr type_of_neutral(const TriContext& ctx, const Expr& e);
  Expr whnf_core(const TriContext& ctx, const Expr& e, bool delta);

  bool conv(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b);
  bool conv_split(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b);
  bool conv_whnf(const TriContext& ctx, const Expr& type, const Expr& a, const Expr& b);
  bool conv_struct(const TriContext& ctx, const Expr& a, const Expr& b);
  std::optional<Expr> conv_neutral(const TriContext& ctx, const Expr& a, const Expr& b);
  bool tope_equiv(const TriContext& ctx, const Expr& a, const Expr& b);

  std::vector<std::vector<Expr>> dnf(const Expr& tope, const TriContext& ctx, const Expr& at);
  std::vector<TriContext> split(const TriContext& ctx, const Expr& at);

  const GlobalScope& scope_;
  ShapeTable shapes_;
  CheckOptions opts_;
  std::uint64_t fuel_left_;
  Span span_;
  std::map<std::string, bool> memo_;
};

/// Checks one declaration against `scope`; returns the entry to add. Throws
/// CheckError with decl and file filled in. Postulates must be named in
/// `ledger`.
GlobalEntry check_decl(const GlobalScope& scope, const RawDecl& d, const std::string& file, const CheckOptions& opts,
                       const std::set<std::string>* ledger);

/// Resolves and validates `shape Name := {...}`. Redeclaring a built-in shape
/// is allowed when the two are equivalent.
ShapeDef check_shape_decl(const GlobalScope& scope, const RawDecl& d, const std::string& file);

}  // namespace sstt
