#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sstt/expr.hpp"

namespace sstt {

enum class DiagKind {
  ParseError,
  ScopeError,
  TypeMismatch,
  TopeUnsolved,
  BoundaryMismatch,
  FuelExhausted,
  TopeTooLarge,
  UnledgeredAxiom,
  AnnotationRequired,
};

/// Stable snake_case name used in reports and expectation files.
const char* diag_kind_name(DiagKind k);
bool parse_diag_kind(const std::string& s, DiagKind& out);

struct Diagnostic {
  std::string decl;
  std::string file;
  Span span;
  DiagKind kind = DiagKind::TypeMismatch;
  std::string message;
  std::string sequent;  // failed tope sequent, when relevant
  std::string lhs, rhs;  // both sides of a failed equality
  std::vector<std::string> context;  // "t : 2", "x : A", "| t === 0"
};

/// Thrown by the checker; carries one diagnostic.
class CheckError : public std::runtime_error {
 public:
  explicit CheckError(Diagnostic d) : std::runtime_error(d.message), diag_(std::move(d)) {}
  const Diagnostic& diag() const { return diag_; }
  Diagnostic& diag() { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace sstt
