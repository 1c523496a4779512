#pragma once

// Decision procedure for the coherent theory of the strict interval.
//
// Models of the tope layer are bounded total orders with 0 < 1. A positive
// formula (conjunction, disjunction, <=, ===) evaluated under a valuation only
// depends on the weak order the valuation induces on the 2-valued atoms
// together with the endpoints, so entailment is decided by enumerating every
// such weak order. Points of product cubes are first brought into tuple normal
// form, which reduces === on products to componentwise === on atoms.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sstt::tope {

class Cube {
 public:
  enum class Kind { Unit, Interval, Product };

  static Cube unit() { return Cube(Kind::Unit); }
  static Cube interval() { return Cube(Kind::Interval); }
  static Cube product(Cube l, Cube r);

  Kind kind() const { return kind_; }
  const Cube& left() const { return parts_->first; }
  const Cube& right() const { return parts_->second; }

  bool operator==(const Cube& o) const;
  bool operator!=(const Cube& o) const { return !(*this == o); }

  /// "2", "1", "2 * (2 * 1)"; `unicode` uses the multiplication sign.
  std::string str(bool unicode = false) const;

 private:
  explicit Cube(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Interval;
  std::shared_ptr<const std::pair<Cube, Cube>> parts_;
};

struct PointNode;
using Point = std::shared_ptr<const PointNode>;

struct PointNode {
  enum class Kind { Var, Zero, One, Star, Pair, Fst, Snd };
  Kind kind;
  std::string name;  // Var only
  Point a, b;
};

Point var(std::string name);
Point zero();
Point one();
Point star();
Point pair(Point a, Point b);
Point fst(Point p);
Point snd(Point p);

struct TopeNode;
using Tope = std::shared_ptr<const TopeNode>;

struct TopeNode {
  enum class Kind { Top, Bot, And, Or, Le, Eq };
  Kind kind;
  Tope l, r;    // And / Or
  Point p, q;   // Le / Eq
};

Tope top();
Tope bot();
Tope conj(Tope l, Tope r);
Tope disj(Tope l, Tope r);
Tope le(Point p, Point q);
Tope eq(Point p, Point q);

std::string to_string(const Point& p);
std::string to_string(const Tope& t);

using CubeContext = std::vector<std::pair<std::string, Cube>>;

class TopeError : public std::runtime_error {
 public:
  enum class Kind { Scope, CubeMismatch, TooLarge };
  TopeError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Maximum number of disjuncts produced by DNF expansion.
inline constexpr std::size_t kMaxDisjuncts = 4096;

/// Type of a point in `ctx`; throws TopeError on scope or cube errors.
Cube infer_cube(const CubeContext& ctx, const Point& p);

/// Tuple normal form: projections pushed through pairs, variables of product
/// cubes eta-expanded, unit points collapsed to `star`.
Point normalize_cube(const CubeContext& ctx, const Point& p);

/// Replaces free occurrences of variable `name` by `value`.
Point substitute(const Point& p, const std::string& name, const Point& value);
Tope substitute(const Tope& t, const std::string& name, const Point& value);

/// Ordered partition of the atoms together with the endpoints, bottom first.
/// Each block lists names; the endpoint markers are "0" and "1".
struct CounterModel {
  std::vector<std::vector<std::string>> blocks;
  std::string str() const;  // e.g. "0 = y < x = 1"
};

struct Verdict {
  bool entailed = false;
  std::optional<CounterModel> counter_model;
  explicit operator bool() const { return entailed; }
};

struct Sequent {
  CubeContext ctx;
  Tope hyp;
  Tope goal;
};

Verdict entails(const Sequent& s);

/// {pattern : cube | constraint}. A pattern is either one variable or a
/// nested tuple of variables; `binder` records the tuple as a point.
struct Shape {
  Point binder;
  Cube cube;
  Tope constraint;
};

Verdict shape_included(const Shape& sub, const Shape& sup);

/// Variables bound by a binder tuple, typed by decomposing `cube`.
CubeContext pattern_context(const Point& binder, const Cube& cube);

/// Component of `p` along a path of projections (false = fst), reducing
/// through pairs.
Point project(const Point& p, const std::vector<bool>& path);

/// Decides ctx | hyp |- s === t componentwise.
bool eq_under(const CubeContext& ctx, const Tope& hyp, const Point& s, const Point& t);

/// Evaluates `t` in a model given by a level per atom key; endpoints are
/// levels 0 and `top`. Exposed for tests and counter-model validation.
struct Model {
  std::vector<std::string> atoms;  // sorted keys, e.g. "x", "fst p"
  std::vector<int> level;          // parallel to atoms
  int top = 1;
};
bool evaluate(const CubeContext& ctx, const Tope& t, const Model& m);

/// Model corresponding to a counter-model returned by `entails`.
Model model_of(const CounterModel& cm);

}  // namespace sstt::tope
