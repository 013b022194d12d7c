#include "nfm/engine.hpp"

#include "nfm/error.hpp"
#include "nfm/interpreter.hpp"

namespace nfm {

std::vector<std::pair<std::string, ThunkPtr>> to_vector(const Bindings& bindings) {
  std::vector<std::pair<std::string, ThunkPtr>> out;
  for (const auto* cell = bindings.get(); cell; cell = cell->tail.get()) {
    out.emplace_back(cell->head.key, cell->head.value);
  }
  return out;
}

ThunkPtr find_binding(const Bindings& bindings, const std::string& key) {
  for (const auto* cell = bindings.get(); cell; cell = cell->tail.get()) {
    if (cell->head.key == key) return cell->head.value;
  }
  return nullptr;
}

Env pattern_scope(const Env& env, const Bindings& bindings, const LoopFramePtr& loops) {
  auto frame = std::make_shared<Frame>(env);
  for (const auto* cell = bindings.get(); cell; cell = cell->tail.get()) frame->bind(cell->head.key, cell->head.value);
  // Outer iterations first so that an inner loop variable shadows an outer one.
  std::vector<const LoopFrame*> chain;
  for (const auto* f = loops.get(); f; f = f->parent.get()) chain.push_back(f);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    frame->bind(std::get<LoopPat>((*it)->loop->node).var, ready(make_int((*it)->index)));
  }
  return frame;
}

namespace {

Integer loop_bound(Interpreter& interp, const ExprPtr& expr, const Env& scope) {
  ValuePtr v = interp.eval(expr, scope);
  const auto* i = v->as<IntVal>();
  if (!i) {
    throw Error(ErrorKind::NonIntegerLoopBound,
                "`" + print_expr(*expr) + "` evaluated to " + type_name(*v));
  }
  return i->value;
}

}  // namespace

ExpandedLoop expand_loop(Interpreter& interp, const Pattern& loop, const LoopFramePtr& outer,
                         const std::optional<std::pair<Integer, Integer>>& resume, const Env& scope) {
  const auto& node = std::get<LoopPat>(loop.node);
  Integer index, last;
  if (resume) {
    std::tie(index, last) = *resume;
  } else {
    index = loop_bound(interp, node.start, scope);
    last = loop_bound(interp, node.end, scope);
  }
  if (index > last) return {node.tail.get(), outer};
  return {node.repeat.get(),
          std::make_shared<const LoopFrame>(LoopFrame{&loop, std::move(index), std::move(last), outer})};
}

std::string print_expanded(const ExpandedLoop& expanded) {
  PrintHooks hooks;
  LoopFramePtr loops = expanded.loops;
  hooks.variable = [loops](const std::string& name) -> std::optional<std::string> {
    for (const auto* f = loops.get(); f; f = f->parent.get()) {
      if (std::get<LoopPat>(f->loop->node).var == name) return f->index.str();
    }
    return std::nullopt;
  };
  if (loops) {
    hooks.placeholder = [loops] {
      const auto& node = std::get<LoopPat>(loops->loop->node);
      Integer next = loops->index + 1;
      return "(loop $" + node.var + " [" + next.str() + " " + loops->last.str() + "] " +
             print_pattern(*node.repeat) + " " + print_pattern(*node.tail) + ")";
    };
  }
  return print_pattern(*expanded.pattern, &hooks);
}

// ---------------------------------------------------------------------------

namespace {

class NoSuccessor final : public NodeSource<MatchState> {
 public:
  std::optional<MatchState> next() override { return std::nullopt; }
};

class OneSuccessor final : public NodeSource<MatchState> {
 public:
  explicit OneSuccessor(MatchState state) : state_(std::move(state)) {}
  std::optional<MatchState> next() override {
    std::optional<MatchState> out = std::move(state_);
    state_.reset();
    return out;
  }

 private:
  std::optional<MatchState> state_;
};

// Each alternative of a decomposition pushes the argument atoms, in
// left-to-right order, in front of the remaining stack.
class Decomposed final : public NodeSource<MatchState> {
 public:
  Decomposed(std::unique_ptr<Decomposition> alternatives, const MatchAtom& atom, MatchState rest)
      : alternatives_(std::move(alternatives)),
        args_(&std::get<InductivePat>(atom.pattern->node).args),
        loops_(atom.loops),
        rest_(std::move(rest)) {}

  std::optional<MatchState> next() override {
    std::optional<Alternative> alt = alternatives_->next();
    if (!alt) return std::nullopt;
    AtomStack stack = rest_.stack;
    for (std::size_t i = args_->size(); i-- > 0;) {
      Subtarget& sub = (*alt)[i];
      stack = push_front(MatchAtom{(*args_)[i].get(), std::move(sub.target), std::move(sub.matcher), loops_, {}},
                         std::move(stack));
    }
    return MatchState{std::move(stack), rest_.bindings};
  }

 private:
  std::unique_ptr<Decomposition> alternatives_;
  const std::vector<PatternPtr>* args_;
  LoopFramePtr loops_;
  MatchState rest_;
};

NodeStream<MatchState> one(MatchState state) { return std::make_unique<OneSuccessor>(std::move(state)); }

Bindings add_binding(const Bindings& bindings, std::string key, ThunkPtr value) {
  if (find_binding(bindings, key)) {
    throw Error(ErrorKind::DuplicateBinding, "pattern variable `" + key + "` bound twice in one match");
  }
  return push_front(Binding{std::move(key), std::move(value)}, bindings);
}

}  // namespace

NodeStream<MatchState> Stepper::step(const MatchState& state) const {
  const MatchAtom& atom = state.stack->head;
  MatchState rest{state.stack->tail, state.bindings};

  return std::visit(
      [&](const auto& node) -> NodeStream<MatchState> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Wildcard>) {
          return one(std::move(rest));
        } else if constexpr (std::is_same_v<T, PatVar>) {
          rest.bindings = add_binding(rest.bindings, node.name, atom.target);
          return one(std::move(rest));
        } else if constexpr (std::is_same_v<T, IndexedPatVar>) {
          Env scope = pattern_scope(env_, state.bindings, atom.loops);
          std::vector<std::int64_t> indexes;
          for (const auto& i : node.indices) indexes.push_back(interp_.eval_index(i, scope));
          rest.bindings = add_binding(rest.bindings, indexed_key(node.name, indexes), atom.target);
          return one(std::move(rest));
        } else if constexpr (std::is_same_v<T, ValuePat>) {
          if (atom.matcher->kind == Matcher::Kind::Something) {
            throw Error(ErrorKind::ValuePatternUnderSomething,
                        "value-pattern `" + print_pattern(*atom.pattern) + "` under the something matcher");
          }
          Env scope = pattern_scope(env_, state.bindings, atom.loops);
          ThunkPtr expected = ready(interp_.eval(node.expr, scope));
          if (!value_equal(*atom.matcher, expected, atom.target)) return std::make_unique<NoSuccessor>();
          return one(std::move(rest));
        } else if constexpr (std::is_same_v<T, InductivePat>) {
          auto alternatives = decompose(atom.matcher, node.ctor, node.args.size(), atom.target);
          return std::make_unique<Decomposed>(std::move(alternatives), atom, std::move(rest));
        } else if constexpr (std::is_same_v<T, LoopPat>) {
          Env scope = pattern_scope(env_, state.bindings, atom.loops);
          ExpandedLoop expanded = expand_loop(interp_, *atom.pattern, atom.loops, atom.resume, scope);
          rest.stack = push_front(MatchAtom{expanded.pattern, atom.target, atom.matcher, expanded.loops, {}},
                                  std::move(rest.stack));
          return one(std::move(rest));
        } else if constexpr (std::is_same_v<T, LoopPlaceholder>) {
          const LoopFrame* owner = atom.loops.get();
          if (!owner) throw Error(ErrorKind::MisplacedEllipsis, "`...` outside a loop-pattern");
          rest.stack = push_front(MatchAtom{owner->loop, atom.target, atom.matcher, owner->parent,
                                            std::make_pair(Integer(owner->index + 1), owner->last)},
                                  std::move(rest.stack));
          return one(std::move(rest));
        }
      },
      atom.pattern->node);
}

FairScheduler<MatchState, Bindings>::Outcome Stepper::visit(MatchState state) const {
  if (!state.stack) return std::move(state.bindings);
  return step(state);
}

ResultStream::ResultStream(Interpreter& interp, Env env, PatternPtr pattern, ThunkPtr target, MatcherPtr matcher)
    : pattern_(std::move(pattern)),
      stepper_(interp, std::move(env)),
      scheduler_(MatchState{push_front(MatchAtom{pattern_.get(), std::move(target), std::move(matcher), nullptr, {}},
                                       AtomStack{}),
                            nullptr},
                 [this](MatchState s) { return stepper_.visit(std::move(s)); }) {}

std::optional<Bindings> ResultStream::next() { return scheduler_.next(); }

std::shared_ptr<ResultStream> match_all(Interpreter& interp, ThunkPtr target, MatcherPtr matcher,
                                        PatternPtr pattern, Env env) {
  return std::make_shared<ResultStream>(interp, std::move(env), std::move(pattern), std::move(target),
                                        std::move(matcher));
}

std::optional<FirstMatch> match_first(Interpreter& interp, const ThunkPtr& target, const MatcherPtr& matcher,
                                      const std::vector<MatchClause>& clauses, const Env& env) {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    ResultStream results(interp, env, clauses[i].pattern, target, matcher);
    if (auto bindings = results.next()) return FirstMatch{i, std::move(*bindings)};
  }
  return std::nullopt;
}

}  // namespace nfm
