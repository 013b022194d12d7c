#include "nfm/session.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nfm/error.hpp"

namespace nfm {

namespace {

Status status_of(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  return err && err->is_parse_error() ? Status::ParseError : Status::EvalError;
}

}  // namespace

RunResult run_program(Interpreter& interp, std::string_view text, const LineSink& out, bool keep_going) {
  RunResult result;
  auto fail = [&](const std::exception& e) {
    std::string line = render_error(e);
    if (result.status == Status::Ok) {
      result.status = status_of(e);
      result.error = line;
    }
    if (keep_going) out(line);
  };

  std::vector<SourceForm> forms;
  try {
    forms = read_forms(text);
  } catch (const std::exception& e) {
    fail(e);
    return result;
  }
  for (const SourceForm& form : forms) {
    try {
      TopForm top = parse_top(form);
      if (auto value = interp.execute(top)) out(interp.render(*value));
    } catch (const std::exception& e) {
      fail(e);
      if (!keep_going) break;
    }
  }
  return result;
}

std::size_t GoldenReport::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.passed; }));
}

std::string GoldenReport::summary() const {
  std::ostringstream s;
  for (const auto& c : cases) {
    s << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) s << ": " << c.message;
    s << '\n';
  }
  if (cases.empty()) {
    s << "0 tests\n";
  } else {
    s << passed() << "/" << cases.size() << " passed\n";
  }
  return s.str();
}

namespace {

bool slurp(const std::filesystem::path& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  out = s.str();
  return true;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream s(text);
  for (std::string line; std::getline(s, line);) lines.push_back(line);
  return lines;
}

std::string first_difference(const std::string& expected, const std::string& actual) {
  auto e = split_lines(expected), a = split_lines(actual);
  for (std::size_t i = 0; i < std::max(e.size(), a.size()); ++i) {
    const std::string want = i < e.size() ? e[i] : "<end of output>";
    const std::string got = i < a.size() ? a[i] : "<end of output>";
    if (want != got) return "line " + std::to_string(i + 1) + ": expected `" + want + "`, got `" + got + "`";
  }
  return "outputs differ in trailing whitespace";
}

GoldenCase run_case(const std::string& name, const std::filesystem::path* source,
                    const std::filesystem::path* expected, const Options& options) {
  GoldenCase result{name, false, ""};
  if (!source) {
    result.message = "missing " + name + ".nfm";
    return result;
  }
  if (!expected) {
    result.message = "missing " + name + ".expected";
    return result;
  }
  std::string text, want;
  if (!slurp(*source, text) || !slurp(*expected, want)) {
    result.message = "cannot read case files";
    return result;
  }
  std::string got;
  try {
    Interpreter interp(options);
    run_program(interp, text, [&](std::string_view line) { (got += line) += '\n'; }, true);
  } catch (const std::exception& e) {
    result.message = render_error(e);
    return result;
  }
  result.passed = got == want;
  if (!result.passed) result.message = first_difference(want, got);
  return result;
}

}  // namespace

GoldenReport run_golden_tests(const std::string& dir, const Options& options) {
  namespace fs = std::filesystem;
  struct Pair {
    std::optional<fs::path> source, expected;
  };
  std::map<std::string, Pair> pairs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.extension() == ".nfm") pairs[p.stem().string()].source = p;
    if (p.extension() == ".expected") pairs[p.stem().string()].expected = p;
  }
  GoldenReport report;
  for (const auto& [name, pair] : pairs) {
    report.cases.push_back(run_case(name, pair.source ? &*pair.source : nullptr,
                                    pair.expected ? &*pair.expected : nullptr, options));
  }
  return report;
}

}  // namespace nfm
