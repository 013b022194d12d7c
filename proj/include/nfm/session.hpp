#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nfm/interpreter.hpp"

namespace nfm {

enum class Status { Ok = 0, EvalError = 1, ParseError = 2, IoError = 3 };

struct RunResult {
  Status status = Status::Ok;
  std::string error;  // first error, rendered
};

using LineSink = std::function<void(std::string_view)>;

/// Runs every top-level form of `text`, sending each bare expression's
/// rendered value to `out`. With `keep_going` a failing form prints its
/// error as an output line and the run continues (REPL behaviour);
/// otherwise the run stops at the first error.
RunResult run_program(Interpreter& interp, std::string_view text, const LineSink& out, bool keep_going);

struct GoldenCase {
  std::string name;
  bool passed = false;
  std::string message;  // first diverging line, or why the case could not run
};

struct GoldenReport {
  std::vector<GoldenCase> cases;
  std::size_t passed() const;
  bool ok() const { return passed() == cases.size(); }
  std::string summary() const;
};

/// Replays each `X.nfm` in `dir` through a fresh interpreter in keep-going
/// mode and compares the output with `X.expected` byte for byte.
GoldenReport run_golden_tests(const std::string& dir, const Options& options);

}  // namespace nfm
