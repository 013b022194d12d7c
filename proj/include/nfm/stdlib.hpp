#pragma once

#include <string_view>

#include "nfm/value.hpp"

namespace nfm {

/// Arithmetic, comparison, collection primitives, the `nats` and `primes`
/// streams and the built-in matchers.
void install_builtins(Frame& frame);

/// Source of the pattern-matching library.
std::string_view library_source();

/// Loads the library into a frame over `builtins`. Each definition is
/// evaluated against `builtins` alone, so names inside a body refer to the
/// primitives rather than to the library's own redefinitions.
Env stdlib_defs(Interpreter& interp, const Env& builtins);

/// The part of the library visible at top level: `member?` and `delete`.
/// `map` and `take` stay the primitives.
Env export_library(const Env& library, const Env& builtins);

}  // namespace nfm
