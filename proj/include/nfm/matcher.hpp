#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nfm/value.hpp"

namespace nfm {

struct AdtCtor {
  std::string pattern_name;  // `card`
  std::string data_name;     // `Card`
  std::vector<MatcherPtr> fields;
};

struct AdtSignature {
  std::string name;
  std::vector<AdtCtor> ctors;

  const AdtCtor* by_pattern(const std::string& name) const;
  const AdtCtor* by_data(const std::string& name) const;
};

/// A matcher decides how inductive patterns decompose a target and how
/// value-patterns compare against it.
struct Matcher {
  enum class Kind { Something, Eq, Integer, List, Multiset, Set, Tuple, Adt };

  Kind kind;
  std::vector<MatcherPtr> params;  // element matcher, or tuple components
  std::shared_ptr<const AdtSignature> adt;

  const MatcherPtr& element() const { return params.front(); }
  bool is_collection() const {
    return kind == Kind::List || kind == Kind::Multiset || kind == Kind::Set;
  }
};

MatcherPtr something_matcher();
MatcherPtr eq_matcher();
MatcherPtr integer_matcher();
MatcherPtr list_of(MatcherPtr element);
MatcherPtr multiset_of(MatcherPtr element);
MatcherPtr set_of(MatcherPtr element);
MatcherPtr tuple_of(std::vector<MatcherPtr> components);

/// Builds an algebraic-data matcher. Each entry pairs a lowercase pattern
/// constructor with its field matchers; the data constructor is the same
/// name capitalized. Throws DuplicateConstructor.
MatcherPtr declare_adt_matcher(std::string name,
                               std::vector<std::pair<std::string, std::vector<MatcherPtr>>> ctors);

/// Interprets a value as a matcher: matcher values directly, tuples of
/// matchers as a tuple matcher. Throws TypeError otherwise.
MatcherPtr as_matcher(const ValuePtr& value);

std::string describe(const Matcher& m);

struct Subtarget {
  ThunkPtr target;
  MatcherPtr matcher;
};
using Alternative = std::vector<Subtarget>;

/// Lazy stream of the ways one inductive pattern splits a target. Each
/// alternative lines up with the pattern's arguments.
class Decomposition {
 public:
  virtual ~Decomposition() = default;
  virtual std::optional<Alternative> next() = 0;
};

/// Throws MatcherMismatch when the matcher has no constructor `ctor` of the
/// given arity.
std::unique_ptr<Decomposition> decompose(const MatcherPtr& matcher, const std::string& ctor,
                                         std::size_t arity, const ThunkPtr& target);

/// Equality used by value-patterns. Throws ValuePatternUnderSomething for
/// the `something` matcher.
bool value_equal(const Matcher& matcher, const ThunkPtr& expected, const ThunkPtr& target);

/// Structural equality on fully forced values (the `eq` matcher).
bool structural_equal(const ThunkPtr& a, const ThunkPtr& b);

/// Largest collection compared by multiset or set equality.
inline constexpr std::size_t kEqualityCap = 64;

}  // namespace nfm
