#pragma once

// Three-layer judgment context: cube variables, tope hypotheses and typed
// variables. Contexts are values; extension returns a new context.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sstt/expr.hpp"
#include "sstt/tope.hpp"

namespace sstt {

class TriContext {
 public:
  struct Entry {
    std::string name;
    bool is_cube = false;
    tope::Cube cube = tope::Cube::interval();  // cube variables
    Expr type;                                 // typed variables
  };

  TriContext() = default;

  TriContext with_cube(const std::string& name, const tope::Cube& c) const;
  TriContext with_var(const std::string& name, const Expr& type) const;
  /// Adds a tope hypothesis (conjoined with the existing ones).
  TriContext with_hyp(const Expr& tope) const;
  /// Same variables, hypotheses replaced.
  TriContext with_hyps(std::vector<Expr> hyps) const;

  const Entry* lookup(const std::string& name) const;
  bool binds(const std::string& name) const { return lookup(name) != nullptr; }

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<Expr>& hyps() const { return hyps_; }

  tope::CubeContext cube_context() const;
  /// Conjunction of the hypotheses (TOP when there are none).
  Expr hyp() const;
  bool has_disjunction() const { return has_or_; }

  /// "t : 2", "x : A", "| t === 0" lines for diagnostics.
  std::vector<std::string> snapshot() const;

  // Memo for the consistency check, shared by copies with equal hypotheses.
  mutable std::shared_ptr<std::optional<bool>> consistent_memo = std::make_shared<std::optional<bool>>();

 private:
  std::vector<Entry> entries_;
  std::vector<Expr> hyps_;
  bool has_or_ = false;
};

}  // namespace sstt
