#include "sstt/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sstt {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Ledger Ledger::parse(const std::string& text) {
  Ledger l;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tab = line.find('\t', first);
    std::string name = line.substr(first, tab == std::string::npos ? std::string::npos : tab - first);
    std::string desc = tab == std::string::npos ? "" : line.substr(tab + 1);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    l.entries[name] = desc;
  }
  return l;
}

Ledger Ledger::load(const std::string& path) { return parse(read_file(path)); }

std::set<std::string> Ledger::names() const {
  std::set<std::string> out;
  for (const auto& [n, d] : entries) out.insert(n);
  return out;
}

const char* decl_status_name(DeclStatus s) {
  switch (s) {
    case DeclStatus::Ok: return "ok";
    case DeclStatus::Failed: return "failed";
    case DeclStatus::Skipped: return "skipped";
  }
  return "?";
}

bool Report::ok() const {
  if (!diagnostics.empty()) return false;
  for (const auto& f : files) {
    if (f.failed) return false;
    for (const auto& d : f.decls)
      if (d.status != DeclStatus::Ok) return false;
  }
  return true;
}

std::map<std::string, int> Report::totals() const {
  std::map<std::string, int> t{{"definition", 0},     {"axiom", 0},  {"theorem-proved", 0}, {"theorem-stated", 0},
                               {"shape", 0},          {"failed", 0}, {"skipped", 0},        {"files", 0},
                               {"failed_files", 0}};
  for (const auto& f : files) {
    ++t["files"];
    if (f.failed) ++t["failed_files"];
    for (const auto& d : f.decls) {
      if (d.status == DeclStatus::Failed) ++t["failed"];
      else if (d.status == DeclStatus::Skipped) ++t["skipped"];
      else ++t[d.tag];
    }
  }
  return t;
}

CorpusChecker::CorpusChecker(CheckOptions opts, std::optional<Ledger> ledger)
    : opts_(opts), ledger_(std::move(ledger)) {}

namespace {

void collect_names(const Expr& e, std::set<std::string>& out) {
  if (!e) return;
  out.insert(e->free().begin(), e->free().end());
  // shape names in binder position are not free variables
  if (e->tag == Tag::ShapeApp) out.insert(e->name);
  for (const auto& k : e->kids) collect_names(k, out);
}

std::set<std::string> mentioned(const RawDecl& d) {
  std::set<std::string> out;
  if (d.kind == DeclKind::Shape) {
    collect_names(d.shape_tope, out);
    return out;
  }
  collect_names(d.full_type(), out);
  if (auto b = d.full_body()) collect_names(*b, out);
  return out;
}

}  // namespace

void CorpusChecker::check_source(const std::string& text, const std::string& file_id, const Ledger* ledger) {
  report_.sources[file_id] = text;
  FileRecord rec;
  rec.file = file_id;
  SourceModule m;
  try {
    m = parse_module(text, file_id);
  } catch (const ParseError& e) {
    Diagnostic d;
    d.kind = DiagKind::ParseError;
    d.file = file_id;
    d.span = e.span();
    d.message = e.detail();
    report_.diagnostics.push_back(std::move(d));
    rec.failed = true;
    report_.files.push_back(std::move(rec));
    return;
  }
  const Ledger* led = ledger ? ledger : (ledger_ ? &*ledger_ : nullptr);
  std::set<std::string> led_names = led ? led->names() : std::set<std::string>{};
  for (const auto& d : m.decls) {
    DeclRecord dr;
    dr.name = d.name;
    dr.tag = d.kind == DeclKind::Shape        ? "shape"
             : d.kind == DeclKind::Postulate  ? "axiom"
             : d.kind == DeclKind::Definition ? "definition"
             : d.body                         ? "theorem-proved"
                                              : "theorem-stated";
    auto deps = mentioned(d);
    bool blocked = std::any_of(deps.begin(), deps.end(), [&](const std::string& n) { return bad_.count(n) != 0; });
    if (blocked) {
      dr.status = DeclStatus::Skipped;
      bad_.insert(d.name);
      rec.decls.push_back(std::move(dr));
      continue;
    }
    try {
      if (d.kind == DeclKind::Shape) {
        ShapeDef s = check_shape_decl(scope_, d, file_id);
        if (!ShapeTable::builtin().find(d.name)) scope_.add_shape(std::move(s), file_id, d.span);
      } else {
        GlobalEntry e = check_decl(scope_, d, file_id, opts_, led ? &led_names : nullptr);
        if (e.tag == LedgerTag::Axiom) report_.axioms.emplace_back(e.name, led->entries.at(e.name));
        scope_.add(std::move(e));
      }
    } catch (const CheckError& err) {
      dr.status = DeclStatus::Failed;
      bad_.insert(d.name);
      // only the first diagnostic of a file is reported
      if (!rec.failed) report_.diagnostics.push_back(err.diag());
      rec.failed = true;
    }
    rec.decls.push_back(std::move(dr));
  }
  report_.files.push_back(std::move(rec));
}

Report check_files(const std::vector<std::string>& paths, const CheckOptions& opts) {
  CorpusChecker cc(opts, std::nullopt);
  std::map<std::string, Ledger> ledgers;
  for (const auto& p : paths) {
    std::string text = read_file(p);
    fs::path dir = fs::path(p).parent_path();
    std::string key = dir.string();
    if (!ledgers.count(key)) {
      fs::path lp = dir / "axioms.ledger";
      ledgers[key] = fs::exists(lp) ? Ledger::load(lp.string()) : Ledger{};
    }
    cc.check_source(text, p, &ledgers[key]);
  }
  return cc.report();
}

Report load_and_check_corpus(const std::string& root, const CheckOptions& opts) {
  if (!fs::is_directory(root)) throw std::runtime_error("not a directory: " + root);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".sstt") names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  fs::path lp = fs::path(root) / "axioms.ledger";
  Ledger ledger = fs::exists(lp) ? Ledger::load(lp.string()) : Ledger{};
  CorpusChecker cc(opts, ledger);
  for (const auto& n : names) cc.check_source(read_file((fs::path(root) / n).string()), n);
  return cc.report();
}

}  // namespace sstt
