#pragma once

// Checking sequences of files against one shared scope, the axiom ledger and
// the resulting manifest.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sstt/checker.hpp"
#include "sstt/diagnostic.hpp"

namespace sstt {

/// Closed list of permitted postulates: `name<TAB>description` per line,
/// `#` comments.
struct Ledger {
  std::map<std::string, std::string> entries;

  static Ledger parse(const std::string& text);
  /// Throws std::runtime_error if the file cannot be read.
  static Ledger load(const std::string& path);
  std::set<std::string> names() const;
};

enum class DeclStatus { Ok, Failed, Skipped };
const char* decl_status_name(DeclStatus s);

struct DeclRecord {
  std::string name;
  std::string tag;  // ledger tag name, or "shape"
  DeclStatus status = DeclStatus::Ok;
};

struct FileRecord {
  std::string file;
  bool failed = false;
  std::vector<DeclRecord> decls;
};

struct Report {
  std::vector<FileRecord> files;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::pair<std::string, std::string>> axioms;  // name, ledger description
  std::map<std::string, std::string> sources;                 // file id -> text

  bool ok() const;
  std::map<std::string, int> totals() const;
};

/// Checks modules one after another in a single scope. Declarations that
/// mention a failed or skipped declaration are skipped.
class CorpusChecker {
 public:
  CorpusChecker(CheckOptions opts, std::optional<Ledger> ledger);

  /// `ledger` overrides the checker's ledger for this file.
  void check_source(const std::string& text, const std::string& file_id, const Ledger* ledger = nullptr);
  const Report& report() const { return report_; }
  const GlobalScope& scope() const { return scope_; }

 private:
  CheckOptions opts_;
  std::optional<Ledger> ledger_;
  GlobalScope scope_;
  std::set<std::string> bad_;
  Report report_;
};

/// Files in the given order; each file's ledger is `axioms.ledger` in its
/// directory (missing ledger: no postulates allowed). Unreadable files throw
/// std::runtime_error.
Report check_files(const std::vector<std::string>& paths, const CheckOptions& opts);

/// All `*.sstt` files of `root` in filename order with `root/axioms.ledger`.
Report load_and_check_corpus(const std::string& root, const CheckOptions& opts);

/// Deterministic machine-readable report (sorted keys, stable order).
std::string report_json(const Report& r);
/// One block per diagnostic with a source excerpt, then a summary line.
std::string report_text(const Report& r, bool color);

std::string read_file(const std::string& path);

}  // namespace sstt
