#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nfm/syntax.hpp"
#include "nfm/value.hpp"

namespace nfm {

struct Options {
  std::size_t print_limit = 100;  // elements shown per collection before `...`; 0 = no limit
  bool load_stdlib = true;
};

/// Lazy evaluator. Owns three frames: builtins, the pattern-matching library
/// (present when `load_stdlib` is set) and the user's global frame.
class Interpreter {
 public:
  explicit Interpreter(Options options = {});

  ValuePtr eval(const ExprPtr& expr, const Env& env);
  ThunkPtr delay(ExprPtr expr, Env env);
  ValuePtr apply(const ValuePtr& fn, std::vector<ThunkPtr> args);

  /// Runs one top-level form. Definitions extend the global frame and
  /// return nothing; bare expressions return their value.
  std::optional<ValuePtr> execute(const TopForm& form);

  /// Evaluates an integer-valued expression used as a variable index.
  std::int64_t eval_index(const ExprPtr& expr, const Env& env);

  std::string render(const ValuePtr& value) const;
  std::string render(const ThunkPtr& value) const;

  const Env& global() const { return global_; }
  const Env& builtins() const { return builtins_; }
  /// The pattern-matching library definitions (`map`, `member?`, `delete`,
  /// `take`), or null without the stdlib.
  const Env& library() const { return library_; }

  Options& options() { return options_; }
  const Options& options() const { return options_; }

 private:
  Options options_;
  Env builtins_;
  Env library_;
  Env global_;
};

/// `Error: <Kind>: <detail>` for any exception thrown by the interpreter.
std::string render_error(const std::exception& error);

}  // namespace nfm
