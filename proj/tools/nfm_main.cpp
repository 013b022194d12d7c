#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nfm/nfm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEval = 1;
constexpr int kExitUsage = 2;

void print_line(void* stream, const char* line, size_t len) {
  auto* out = static_cast<std::FILE*>(stream);
  std::fwrite(line, 1, len, out);
  std::fputc('\n', out);
  std::fflush(out);
}

int exit_code(nfm_status s) {
  switch (s) {
    case NFM_OK:
      return kExitOk;
    case NFM_EVAL_ERROR:
      return kExitEval;
    default:
      return kExitUsage;
  }
}

struct Handle {
  nfm_interp* ptr;
  explicit Handle(const nfm_options& o) : ptr(nfm_create(&o)) {}
  ~Handle() { nfm_destroy(ptr); }
};

int run_source(const nfm_options& opts, const std::string& src) {
  Handle h(opts);
  if (!h.ptr) {
    std::cerr << "nfm: cannot create interpreter\n";
    return kExitEval;
  }
  nfm_set_output(h.ptr, print_line, stdout);
  nfm_status s = nfm_exec(h.ptr, src.data(), src.size(), 0);
  if (s != NFM_OK) std::cerr << nfm_last_error(h.ptr) << '\n';
  return exit_code(s);
}

int repl(const nfm_options& opts) {
  Handle h(opts);
  if (!h.ptr) {
    std::cerr << "nfm: cannot create interpreter\n";
    return kExitEval;
  }
  nfm_set_output(h.ptr, print_line, stdout);
  const bool interactive = isatty(STDIN_FILENO);
  std::string buffer;
  auto prompt = [&] {
    if (interactive && buffer.empty()) {
      std::fputs("> ", stdout);
      std::fflush(stdout);
    }
  };
  prompt();
  for (std::string line; std::getline(std::cin, line);) {
    buffer += line;
    buffer += '\n';
    if (nfm_input_complete(buffer.data(), buffer.size())) {
      nfm_exec(h.ptr, buffer.data(), buffer.size(), 1);
      buffer.clear();
    }
    prompt();
  }
  if (buffer.find_first_not_of(" \t\r\n") != std::string::npos) nfm_exec(h.ptr, buffer.data(), buffer.size(), 1);
  if (interactive) std::fputc('\n', stdout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter for a lazy language with pattern matching on non-free data types"};
  app.fallthrough();
  nfm_options opts = nfm_options_default();
  bool no_stdlib = false;
  app.add_option("--print-limit", opts.print_limit, "Collection elements printed before `...` (0: no limit)")
      ->capture_default_str();
  app.add_flag("--no-stdlib", no_stdlib, "Start without the pattern-matching library");
  app.add_flag_callback("--version", [] {
    std::cout << "nfm " << nfm_version() << '\n';
    throw CLI::Success();
  });

  std::string file, expr, dir;
  auto* run = app.add_subcommand("run", "Run a source file");
  run->add_option("FILE", file)->required();
  auto* eval = app.add_subcommand("eval", "Evaluate one expression");
  eval->add_option("EXPR", expr)->required();
  auto* test = app.add_subcommand("test", "Replay .nfm/.expected pairs in a directory");
  test->add_option("DIR", dir)->required();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  opts.load_stdlib = no_stdlib ? 0 : 1;

  if (*run) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "Error: IoError: cannot read " << file << '\n';
      return kExitUsage;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return run_source(opts, text.str());
  }
  if (*eval) return run_source(opts, expr);
  if (*test) return exit_code(nfm_run_golden(dir.c_str(), &opts, print_line, stdout));
  return repl(opts);
}
