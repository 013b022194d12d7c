#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nfm/error.hpp"
#include "nfm/interpreter.hpp"

namespace testing {

/// Kind of the nfm::Error thrown by `f`, or nothing if it returns normally.
template <typename F>
std::optional<nfm::ErrorKind> error_of(F&& f) {
  try {
    f();
  } catch (const nfm::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Evaluation helpers -------------------------------------------------------

/// Runs a program and returns the rendered value of its last expression.
std::string run(nfm::Interpreter& interp, const std::string& program);
std::string run(const std::string& program);

/// Every rendered output line of a program, errors included.
std::vector<std::string> transcript(const std::string& program);

std::string braces(const std::vector<int>& xs);

/// Every sequence over `alphabet` of length at most `max_len`, shortest first.
std::vector<std::vector<int>> sequences(const std::vector<int>& alphabet, std::size_t max_len);

// Brute-force matching oracle ------------------------------------------------

enum class View { List, Multiset, Set };

struct OPattern;
using OPatternPtr = std::shared_ptr<const OPattern>;
struct OPattern {
  enum class Kind { Wild, Var, ValVar, Nil, Cons, Join };
  Kind kind;
  std::string name;
  OPatternPtr left, right;
};

OPatternPtr wild();
OPatternPtr var(std::string name);
OPatternPtr val(std::string name);  // `,name` where name is bound to an element
OPatternPtr nil();
OPatternPtr cons(OPatternPtr head, OPatternPtr tail);
OPatternPtr join(OPatternPtr front, OPatternPtr back);

/// Element value or collection of element values.
using OValue = std::variant<int, std::vector<int>>;
using OBindings = std::map<std::string, OValue>;

struct OracleTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every result of matching `pattern` against `target` under the given
/// collection view with integer elements, one entry per distinct way of
/// choosing the decomposition. Collection bindings are normalized: sorted
/// for multisets, sorted without duplicates for sets.
std::vector<OBindings> oracle_enumerate(View view, const OPatternPtr& pattern, const std::vector<int>& target,
                                        std::size_t cap = 7);

/// The engine's results for the same question, normalized the same way.
std::vector<OBindings> engine_enumerate(View view, const std::string& pattern, const std::vector<int>& target);

std::string show(const std::vector<OBindings>& results);

// Poker ----------------------------------------------------------------------

struct Card {
  int suit;  // 0 Spade, 1 Heart, 2 Club, 3 Diamond
  int number;
};

std::string classify_hand(const std::vector<Card>& hand);
std::string card_expr(const Card& card);
std::string hand_expr(const std::vector<Card>& hand);

/// Source of the card matcher and the classifier, as shipped in the corpus.
std::string poker_program();

}  // namespace testing
