#include "nfm/nfm.h"

#include <memory>
#include <sstream>
#include <string>

#include "nfm/session.hpp"
#include "nfm/syntax.hpp"

struct nfm_interp {
  std::unique_ptr<nfm::Interpreter> interp;
  nfm_sink sink = nullptr;
  void* user = nullptr;
  std::string last_error;
};

namespace {

nfm::Options convert(const nfm_options* options) {
  nfm::Options out;
  if (options) {
    out.print_limit = options->print_limit;
    out.load_stdlib = options->load_stdlib != 0;
  }
  return out;
}

}  // namespace

extern "C" {

nfm_options nfm_options_default(void) {
  nfm::Options d;
  return nfm_options{d.print_limit, d.load_stdlib ? 1 : 0};
}

nfm_interp* nfm_create(const nfm_options* options) {
  try {
    auto handle = std::make_unique<nfm_interp>();
    handle->interp = std::make_unique<nfm::Interpreter>(convert(options));
    return handle.release();
  } catch (...) {
    return nullptr;
  }
}

void nfm_destroy(nfm_interp* interp) { delete interp; }

void nfm_set_output(nfm_interp* interp, nfm_sink sink, void* user) {
  if (!interp) return;
  interp->sink = sink;
  interp->user = user;
}

nfm_status nfm_exec(nfm_interp* interp, const char* src, size_t len, int keep_going) {
  if (!interp || (!src && len)) return NFM_INVALID_ARGUMENT;
  interp->last_error.clear();
  auto emit = [interp](std::string_view line) {
    if (interp->sink) interp->sink(interp->user, line.data(), line.size());
  };
  try {
    nfm::RunResult r = nfm::run_program(*interp->interp, std::string_view(src ? src : "", len), emit, keep_going != 0);
    interp->last_error = r.error;
    return static_cast<nfm_status>(r.status);
  } catch (const std::exception& e) {
    interp->last_error = nfm::render_error(e);
    return NFM_EVAL_ERROR;
  }
}

const char* nfm_last_error(const nfm_interp* interp) { return interp ? interp->last_error.c_str() : ""; }

int nfm_input_complete(const char* src, size_t len) {
  return nfm::input_complete(std::string_view(src ? src : "", len)) ? 1 : 0;
}

nfm_status nfm_run_golden(const char* dir, const nfm_options* options, nfm_sink sink, void* user) {
  if (!dir) return NFM_INVALID_ARGUMENT;
  auto emit = [&](const std::string& line) {
    if (sink) sink(user, line.data(), line.size());
  };
  try {
    nfm::GoldenReport report = nfm::run_golden_tests(dir, convert(options));
    std::istringstream lines(report.summary());
    for (std::string line; std::getline(lines, line);) emit(line);
    return report.ok() ? NFM_OK : NFM_EVAL_ERROR;
  } catch (const std::exception& e) {
    emit(std::string("Error: IoError: ") + e.what());
    return NFM_IO_ERROR;
  }
}

const char* nfm_version(void) { return "0.1.0"; }

}  // extern "C"
