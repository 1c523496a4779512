#include "sstt/sstt.h"

#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "sstt/corpus.hpp"
#include "sstt/shapes.hpp"
#include "sstt/surface.hpp"
#include "sstt/tope.hpp"

struct sstt_session {
  sstt::CheckOptions opts;
  sstt::Report report;
  bool has_report = false;
  std::string json, text, tope, error;
};

namespace {

template <class F>
sstt_status guarded(sstt_session* s, F&& f) {
  if (!s) return SSTT_USAGE_ERROR;
  s->error.clear();
  try {
    return f();
  } catch (const sstt::ParseError& e) {
    s->error = e.what();
    return SSTT_USAGE_ERROR;
  } catch (const sstt::tope::TopeError& e) {
    s->error = e.what();
    return SSTT_USAGE_ERROR;
  } catch (const sstt::ShapeError& e) {
    s->error = e.what();
    return SSTT_USAGE_ERROR;
  } catch (const std::invalid_argument& e) {
    s->error = e.what();
    return SSTT_USAGE_ERROR;
  } catch (const std::runtime_error& e) {
    // read failures surface as runtime_error from the corpus layer
    s->error = e.what();
    return SSTT_IO_ERROR;
  } catch (const std::exception& e) {
    s->error = e.what();
    return SSTT_INTERNAL_ERROR;
  } catch (...) {
    s->error = "unknown error";
    return SSTT_INTERNAL_ERROR;
  }
}

sstt_status finish(sstt_session* s, sstt::Report r) {
  s->report = std::move(r);
  s->has_report = true;
  return s->report.ok() ? SSTT_OK : SSTT_CHECK_FAILED;
}

}  // namespace

extern "C" {

const char* sstt_version(void) { return "0.1.0"; }

sstt_session* sstt_session_create(void) {
  try {
    return new sstt_session();
  } catch (...) {
    return nullptr;
  }
}

void sstt_session_destroy(sstt_session* s) { delete s; }

sstt_status sstt_set_fuel(sstt_session* s, uint64_t fuel) {
  if (!s) return SSTT_USAGE_ERROR;
  if (fuel == 0) {
    s->error = "fuel must be at least 1";
    return SSTT_USAGE_ERROR;
  }
  s->opts.fuel = fuel;
  return SSTT_OK;
}

sstt_status sstt_check_files(sstt_session* s, const char* const* paths, size_t count) {
  return guarded(s, [&] {
    if (!paths && count) throw std::invalid_argument("null path list");
    std::vector<std::string> v;
    for (size_t i = 0; i < count; ++i) {
      if (!paths[i]) throw std::invalid_argument("null path");
      v.emplace_back(paths[i]);
    }
    return finish(s, sstt::check_files(v, s->opts));
  });
}

sstt_status sstt_check_corpus(sstt_session* s, const char* dir) {
  return guarded(s, [&] {
    if (!dir) throw std::invalid_argument("null directory");
    return finish(s, sstt::load_and_check_corpus(dir, s->opts));
  });
}

sstt_status sstt_check_source(sstt_session* s, const char* text, const char* file_id, const char* ledger) {
  return guarded(s, [&] {
    if (!text) throw std::invalid_argument("null source");
    sstt::CorpusChecker cc(s->opts, sstt::Ledger::parse(ledger ? ledger : ""));
    cc.check_source(text, file_id ? file_id : "<input>");
    return finish(s, cc.report());
  });
}

const char* sstt_report_json(sstt_session* s) {
  if (!s) return "";
  s->json = s->has_report ? sstt::report_json(s->report) : "";
  return s->json.c_str();
}

const char* sstt_report_text(sstt_session* s, int color) {
  if (!s) return "";
  s->text = s->has_report ? sstt::report_text(s->report, color != 0) : "";
  return s->text.c_str();
}

sstt_status sstt_tope_query(sstt_session* s, const char* sequent) {
  return guarded(s, [&] {
    s->tope.clear();
    if (!sequent) throw std::invalid_argument("null sequent");
    auto v = sstt::tope::entails(sstt::parse_sequent(sequent));
    if (v.entailed) {
      s->tope = "entailed";
      return SSTT_OK;
    }
    s->tope = "not entailed; counter-model: " + (v.counter_model ? v.counter_model->str() : std::string("?"));
    return SSTT_CHECK_FAILED;
  });
}

const char* sstt_tope_result(sstt_session* s) { return s ? s->tope.c_str() : ""; }

const char* sstt_last_error(sstt_session* s) { return s ? s->error.c_str() : ""; }

}  // extern "C"
