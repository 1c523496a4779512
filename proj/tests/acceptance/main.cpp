#include <cstdio>
#include <exception>
#include <functional>
#include <vector>

#include "acceptance.hpp"

namespace acceptance {
std::string corpus_dir() { return SSTT_CORPUS_DIR; }
std::string negative_dir() { return SSTT_NEGATIVE_DIR; }
}  // namespace acceptance

int main() {
  using namespace acceptance;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"tope solver agrees with the valuation oracle", tope_oracle},
      {"tope axiom schemas and shape inclusions", axiom_schemas},
      {"corpus checks against the closed ledger", corpus_check},
      {"boundary laws for hom-typed terms", boundary_laws},
      {"negative suite matches expectations", negative_suite},
      {"kernel properties", kernel_properties},
      {"print/parse round trip", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
