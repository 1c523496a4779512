// Command-line driver over the C interface.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sstt/sstt.h"

namespace {

int exit_code(sstt_status st) {
  switch (st) {
    case SSTT_OK: return 0;
    case SSTT_CHECK_FAILED: return 1;
    default: return 2;
  }
}

struct Session {
  sstt_session* s = sstt_session_create();
  ~Session() { sstt_session_destroy(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checker for simplicial type theory files", "sstt"};
  app.set_version_flag("--version", sstt_version());
  app.require_subcommand(1);

  bool machine = false;
  bool no_color = false;
  std::uint64_t fuel = 10000;
  app.add_flag("--machine", machine, "Print a JSON report instead of human-readable diagnostics");
  app.add_flag("--no-color", no_color, "Disable ANSI colors (also disabled by NO_COLOR)");
  app.add_option("--fuel", fuel, "Definition unfoldings allowed per declaration")->check(CLI::PositiveNumber);

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Check files in the given order in one scope");
  check->add_option("files", files, "Source files")->required();

  std::string dir;
  auto* corpus = app.add_subcommand("corpus", "Check every .sstt file of a directory in filename order");
  corpus->add_option("dir", dir, "Corpus directory")->required();

  std::string sequent;
  auto* tope = app.add_subcommand("tope", "Decide a tope sequent `vars | hyp |- goal`");
  tope->add_option("sequent", sequent, "Sequent text")->required();

  // global flags are accepted after the subcommand too
  for (auto* sub : {check, corpus, tope}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bool color = !no_color && std::getenv("NO_COLOR") == nullptr;
  Session session;
  if (!session.s) {
    std::fprintf(stderr, "sstt: out of memory\n");
    return 2;
  }
  sstt_set_fuel(session.s, fuel);

  sstt_status st;
  if (*tope) {
    st = sstt_tope_query(session.s, sequent.c_str());
    if (st == SSTT_OK || st == SSTT_CHECK_FAILED) std::printf("%s\n", sstt_tope_result(session.s));
  } else {
    if (*check) {
      std::vector<const char*> ptrs;
      for (const auto& f : files) ptrs.push_back(f.c_str());
      st = sstt_check_files(session.s, ptrs.data(), ptrs.size());
    } else {
      st = sstt_check_corpus(session.s, dir.c_str());
    }
    if (st == SSTT_OK || st == SSTT_CHECK_FAILED)
      std::fputs(machine ? sstt_report_json(session.s) : sstt_report_text(session.s, color), stdout);
  }
  if (st != SSTT_OK && st != SSTT_CHECK_FAILED) std::fprintf(stderr, "sstt: %s\n", sstt_last_error(session.s));
  return exit_code(st);
}
