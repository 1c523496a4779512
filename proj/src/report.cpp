#include <sstream>

#include "json.hpp"
#include "sstt/corpus.hpp"

namespace sstt {

namespace {

nlohmann::json span_json(const Span& s) {
  return {{"line", s.line}, {"col", s.col}, {"end_line", s.end_line}, {"end_col", s.end_col}};
}

std::string source_line(const std::string& text, std::uint32_t line) {
  std::uint32_t cur = 1;
  std::size_t pos = 0;
  while (cur < line) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) return {};
    pos = nl + 1;
    ++cur;
  }
  auto nl = text.find('\n', pos);
  return text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
}

// Column counts in code points, so a caret lines up under UTF-8 text.
std::size_t display_width(const std::string& s, std::size_t bytes) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < bytes && i < s.size(); ++i)
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) ++w;
  return w;
}

}  // namespace

std::string report_json(const Report& r) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : r.files) {
    nlohmann::json decls = nlohmann::json::array();
    for (const auto& d : f.decls) decls.push_back({{"name", d.name}, {"tag", d.tag}, {"status", decl_status_name(d.status)}});
    files.push_back({{"file", f.file}, {"status", f.failed ? "failed" : "ok"}, {"decls", decls}});
  }
  nlohmann::json diags = nlohmann::json::array();
  for (const auto& d : r.diagnostics) {
    nlohmann::json j{{"kind", diag_kind_name(d.kind)}, {"file", d.file},     {"decl", d.decl},
                     {"message", d.message},           {"span", span_json(d.span)}};
    if (!d.sequent.empty()) j["sequent"] = d.sequent;
    if (!d.lhs.empty()) j["lhs"] = d.lhs;
    if (!d.rhs.empty()) j["rhs"] = d.rhs;
    if (!d.context.empty()) j["context"] = d.context;
    diags.push_back(std::move(j));
  }
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& [n, desc] : r.axioms) axioms.push_back({{"name", n}, {"description", desc}});
  nlohmann::json out{{"status", r.ok() ? "ok" : "failed"},
                     {"files", files},
                     {"totals", r.totals()},
                     {"axioms", axioms},
                     {"diagnostics", diags}};
  return out.dump(2) + "\n";
}

std::string report_text(const Report& r, bool color) {
  const char* red = color ? "\x1b[1;31m" : "";
  const char* bold = color ? "\x1b[1m" : "";
  const char* blue = color ? "\x1b[34m" : "";
  const char* reset = color ? "\x1b[0m" : "";
  std::ostringstream os;
  for (const auto& d : r.diagnostics) {
    os << bold << d.file;
    if (d.span.valid()) os << ":" << d.span.line << ":" << d.span.col;
    os << ": " << reset << red << "error[" << diag_kind_name(d.kind) << "]" << reset;
    if (!d.decl.empty()) os << " in '" << d.decl << "'";
    os << ": " << d.message << "\n";
    auto src = r.sources.find(d.file);
    if (d.span.valid() && src != r.sources.end()) {
      std::string line = source_line(src->second, d.span.line);
      std::string num = std::to_string(d.span.line);
      std::size_t start = display_width(line, d.span.col - 1);
      std::size_t len = 1;
      if (d.span.end_line == d.span.line && d.span.end_col > d.span.col)
        len = display_width(line, d.span.end_col - 1) - start;
      os << blue << std::string(num.size(), ' ') << " |" << reset << "\n";
      os << blue << num << " |" << reset << " " << line << "\n";
      os << blue << std::string(num.size(), ' ') << " |" << reset << " " << std::string(start, ' ') << red
         << std::string(std::max<std::size_t>(len, 1), '^') << reset << "\n";
    }
    for (const auto& c : d.context) os << "  context: " << c << "\n";
    if (!d.sequent.empty()) os << "  sequent: " << d.sequent << "\n";
    if (!d.lhs.empty()) os << "  left:    " << d.lhs << "\n";
    if (!d.rhs.empty()) os << "  right:   " << d.rhs << "\n";
    os << "\n";
  }
  auto t = r.totals();
  os << (r.ok() ? "ok" : "FAILED") << ": " << t["files"] << " file(s), " << t["definition"] << " definition(s), "
     << t["theorem-proved"] << " proved, " << t["theorem-stated"] << " stated, " << t["axiom"] << " axiom(s), "
     << t["shape"] << " shape(s)";
  if (!r.ok()) os << "; " << r.diagnostics.size() << " error(s), " << t["skipped"] << " skipped";
  os << "\n";
  return os.str();
}

}  // namespace sstt
