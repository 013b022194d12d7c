#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfm/matcher.hpp"
#include "nfm/scheduler.hpp"
#include "nfm/syntax.hpp"
#include "nfm/value.hpp"

namespace nfm {

template <typename T>
struct PersistentCell {
  T head;
  std::shared_ptr<const PersistentCell> tail;
};
template <typename T>
using PersistentList = std::shared_ptr<const PersistentCell<T>>;

template <typename T>
PersistentList<T> push_front(T value, PersistentList<T> tail) {
  return std::make_shared<const PersistentCell<T>>(PersistentCell<T>{std::move(value), std::move(tail)});
}

/// One active iteration of a loop-pattern: the loop node, the index of this
/// iteration and the last index.
struct LoopFrame {
  const Pattern* loop;
  Integer index;
  Integer last;
  std::shared_ptr<const LoopFrame> parent;
};
using LoopFramePtr = std::shared_ptr<const LoopFrame>;

struct MatchAtom {
  const Pattern* pattern;
  ThunkPtr target;
  MatcherPtr matcher;
  LoopFramePtr loops;  // iterations enclosing this pattern, innermost first
  std::optional<std::pair<Integer, Integer>> resume;  // for a loop continued from `...`
};

struct Binding {
  std::string key;
  ThunkPtr value;
};

using AtomStack = PersistentList<MatchAtom>;
using Bindings = PersistentList<Binding>;

struct MatchState {
  AtomStack stack;
  Bindings bindings;
};

std::vector<std::pair<std::string, ThunkPtr>> to_vector(const Bindings& bindings);
ThunkPtr find_binding(const Bindings& bindings, const std::string& key);

/// Evaluation scope for expressions inside a pattern: the match expression's
/// environment, the bindings made so far, and the current loop indexes.
Env pattern_scope(const Env& env, const Bindings& bindings, const LoopFramePtr& loops);

struct ExpandedLoop {
  const Pattern* pattern;
  LoopFramePtr loops;
};

/// Unrolls one iteration of a loop-pattern. With the current index at most
/// the last index the result is the repeat-pattern inside a new iteration
/// (whose `...` stands for the same loop at the next index); otherwise it is
/// the tail pattern. Throws NonIntegerLoopBound.
ExpandedLoop expand_loop(Interpreter& interp, const Pattern& loop, const LoopFramePtr& outer,
                         const std::optional<std::pair<Integer, Integer>>& resume, const Env& scope);

/// Prints an unrolled loop the way it reads after substitution: loop
/// variables replaced by their index, `...` by the continued loop.
std::string print_expanded(const ExpandedLoop& expanded);

class Stepper {
 public:
  Stepper(Interpreter& interp, Env env) : interp_(interp), env_(std::move(env)) {}

  /// Pops the head atom and returns the successor states.
  NodeStream<MatchState> step(const MatchState& state) const;

  FairScheduler<MatchState, Bindings>::Outcome visit(MatchState state) const;

 private:
  Interpreter& interp_;
  Env env_;
};

/// Fairly ordered, lazily produced stream of successful bindings.
class ResultStream {
 public:
  ResultStream(Interpreter& interp, Env env, PatternPtr pattern, ThunkPtr target, MatcherPtr matcher);

  std::optional<Bindings> next();
  const FairScheduler<MatchState, Bindings>& scheduler() const { return scheduler_; }

 private:
  PatternPtr pattern_;
  Stepper stepper_;
  FairScheduler<MatchState, Bindings> scheduler_;
};

std::shared_ptr<ResultStream> match_all(Interpreter& interp, ThunkPtr target, MatcherPtr matcher,
                                        PatternPtr pattern, Env env);

struct FirstMatch {
  std::size_t clause;
  Bindings bindings;
};

/// First clause, in order, with a non-empty result stream.
std::optional<FirstMatch> match_first(Interpreter& interp, const ThunkPtr& target, const MatcherPtr& matcher,
                                      const std::vector<MatchClause>& clauses, const Env& env);

}  // namespace nfm
