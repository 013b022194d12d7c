#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfm {

enum class ErrorKind {
  UnbalancedDelimiter,
  StrayToken,
  SyntaxError,
  MisplacedEllipsis,
  UnboundVariable,
  NotAFunction,
  ArityMismatch,
  BlackHole,
  TypeError,
  NoMatch,
  MatcherMismatch,
  NonIntegerLoopBound,
  DuplicateBinding,
  ValuePatternUnderSomething,
  EqualityTooLarge,
  DuplicateConstructor,
  UnknownFieldMatcher,
  NegativeCount,
  DivisionByZero,
  IoError,
};

std::string_view kind_name(ErrorKind kind);

/// Every failure raised by the interpreter. `what()` is "<Kind>: <detail>",
/// which is also the text shown after "Error: " in transcripts.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail);

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

  /// True for errors raised while reading or parsing source text.
  bool is_parse_error() const;

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Raised by the reader when input ends inside an open group. The REPL uses
/// it to decide that more lines are needed.
class IncompleteInput : public Error {
 public:
  explicit IncompleteInput(std::string detail)
      : Error(ErrorKind::UnbalancedDelimiter, std::move(detail)) {}
};

}  // namespace nfm
