#include "nfm/error.hpp"

namespace nfm {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnbalancedDelimiter: return "UnbalancedDelimiter";
    case ErrorKind::StrayToken: return "StrayToken";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MisplacedEllipsis: return "MisplacedEllipsis";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::BlackHole: return "BlackHole";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::MatcherMismatch: return "MatcherMismatch";
    case ErrorKind::NonIntegerLoopBound: return "NonIntegerLoopBound";
    case ErrorKind::DuplicateBinding: return "DuplicateBinding";
    case ErrorKind::ValuePatternUnderSomething: return "ValuePatternUnderSomething";
    case ErrorKind::EqualityTooLarge: return "EqualityTooLarge";
    case ErrorKind::DuplicateConstructor: return "DuplicateConstructor";
    case ErrorKind::UnknownFieldMatcher: return "UnknownFieldMatcher";
    case ErrorKind::NegativeCount: return "NegativeCount";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, std::string detail)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)) {}

bool Error::is_parse_error() const {
  switch (kind_) {
    case ErrorKind::UnbalancedDelimiter:
    case ErrorKind::StrayToken:
    case ErrorKind::SyntaxError:
    case ErrorKind::MisplacedEllipsis:
      return true;
    default:
      return false;
  }
}

}  // namespace nfm
