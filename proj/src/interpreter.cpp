#include "nfm/interpreter.hpp"

#include "nfm/engine.hpp"
#include "nfm/error.hpp"
#include "nfm/matcher.hpp"
#include "nfm/stdlib.hpp"

namespace nfm {

Interpreter::Interpreter(Options options) : options_(options) {
  builtins_ = std::make_shared<Frame>();
  install_builtins(*builtins_);
  Env parent = builtins_;
  if (options_.load_stdlib) {
    library_ = stdlib_defs(*this, builtins_);
    parent = export_library(library_, builtins_);
  }
  global_ = std::make_shared<Frame>(parent);
}

ThunkPtr Interpreter::delay(ExprPtr expr, Env env) {
  if (const auto* c = std::get_if<IntConst>(&expr->node)) return ready(make_int(c->value));
  return lazy([this, expr = std::move(expr), env = std::move(env)] { return eval(expr, env); });
}

std::int64_t Interpreter::eval_index(const ExprPtr& expr, const Env& env) {
  ValuePtr v = eval(expr, env);
  const auto* i = v->as<IntVal>();
  if (!i) throw Error(ErrorKind::TypeError, "index `" + print_expr(*expr) + "` is not an integer");
  if (i->value > INT64_MAX || i->value < INT64_MIN) {
    throw Error(ErrorKind::TypeError, "index `" + print_expr(*expr) + "` is out of range");
  }
  return static_cast<std::int64_t>(i->value);
}

namespace {

ValuePtr next_result_cell(Interpreter& interp, const std::shared_ptr<ResultStream>& results, const ExprPtr& body,
                          const Env& env) {
  std::optional<Bindings> bindings = results->next();
  if (!bindings) return make_empty();
  ThunkPtr head = interp.delay(body, extend(env, to_vector(*bindings)));
  ThunkPtr tail = lazy([&interp, results, body, env] { return next_result_cell(interp, results, body, env); });
  return make_cell(std::move(head), std::move(tail));
}

}  // namespace

ValuePtr Interpreter::eval(const ExprPtr& expr, const Env& env) {
  return std::visit(
      [&](const auto& node) -> ValuePtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          return make_int(node.value);
        } else if constexpr (std::is_same_v<T, Var>) {
          ThunkPtr t = env->lookup(node.name);
          if (!t) throw Error(ErrorKind::UnboundVariable, node.name);
          return t->force();
        } else if constexpr (std::is_same_v<T, IndexedVar>) {
          std::vector<std::int64_t> indexes;
          for (const auto& i : node.indices) indexes.push_back(eval_index(i, env));
          std::string key = indexed_key(node.name, indexes);
          ThunkPtr t = env->lookup(key);
          if (!t) throw Error(ErrorKind::UnboundVariable, key);
          return t->force();
        } else if constexpr (std::is_same_v<T, DataExpr>) {
          std::vector<ThunkPtr> args;
          for (const auto& a : node.args) args.push_back(delay(a, env));
          return make_data(node.ctor, std::move(args));
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          std::vector<ThunkPtr> elems;
          for (const auto& e : node.elems) elems.push_back(delay(e, env));
          return make_tuple(std::move(elems));
        } else if constexpr (std::is_same_v<T, CollectionExpr>) {
          std::vector<ThunkPtr> elems;
          for (const auto& e : node.elems) elems.push_back(delay(e, env));
          return make_collection(elems);
        } else if constexpr (std::is_same_v<T, Lambda>) {
          return std::make_shared<const Value>(Value{Closure{node.params, node.body, env}});
        } else if constexpr (std::is_same_v<T, MatchAllExpr>) {
          ThunkPtr target = delay(node.target, env);
          MatcherPtr matcher = as_matcher(eval(node.matcher, env));
          auto results = match_all(*this, std::move(target), std::move(matcher), node.clause.pattern, env);
          return next_result_cell(*this, results, node.clause.body, env);
        } else if constexpr (std::is_same_v<T, MatchExpr>) {
          ThunkPtr target = delay(node.target, env);
          MatcherPtr matcher = as_matcher(eval(node.matcher, env));
          auto found = match_first(*this, target, matcher, node.clauses, env);
          if (!found) {
            throw Error(ErrorKind::NoMatch, "no clause of the match at " + to_string(expr->pos) + " matched");
          }
          return eval(node.clauses[found->clause].body, extend(env, to_vector(found->bindings)));
        } else if constexpr (std::is_same_v<T, Apply>) {
          ValuePtr fn = eval(node.fn, env);
          std::vector<ThunkPtr> args;
          for (const auto& a : node.args) args.push_back(delay(a, env));
          return apply(fn, std::move(args));
        }
      },
      expr->node);
}

ValuePtr Interpreter::apply(const ValuePtr& fn, std::vector<ThunkPtr> args) {
  if (const auto* c = fn->as<Closure>()) {
    if (c->params.size() != args.size()) {
      throw Error(ErrorKind::ArityMismatch, "function of " + std::to_string(c->params.size()) +
                                                " parameter(s) applied to " + std::to_string(args.size()));
    }
    std::vector<std::pair<std::string, ThunkPtr>> frame;
    for (std::size_t i = 0; i < args.size(); ++i) frame.emplace_back(c->params[i], std::move(args[i]));
    return eval(c->body, extend(c->env, std::move(frame)));
  }
  if (const auto* b = fn->as<Builtin>()) {
    if (b->arity != args.size()) {
      throw Error(ErrorKind::ArityMismatch, b->name + " takes " + std::to_string(b->arity) + " argument(s), got " +
                                                std::to_string(args.size()));
    }
    return b->fn(*this, args);
  }
  throw Error(ErrorKind::NotAFunction, type_name(*fn) + " cannot be applied");
}

std::optional<ValuePtr> Interpreter::execute(const TopForm& form) {
  if (const auto* def = std::get_if<Define>(&form)) {
    global_->bind(def->name, delay(def->value, global_));
    return std::nullopt;
  }
  if (const auto* def = std::get_if<DefineMatcher>(&form)) {
    std::vector<std::pair<std::string, std::vector<MatcherPtr>>> ctors;
    for (const auto& sig : def->ctors) {
      std::vector<MatcherPtr> fields;
      for (const auto& f : sig.fields) {
        try {
          fields.push_back(as_matcher(eval(f, global_)));
        } catch (const Error&) {
          throw Error(ErrorKind::UnknownFieldMatcher,
                      "`" + print_expr(*f) + "` in constructor <" + sig.name + "> is not a matcher");
        }
      }
      ctors.emplace_back(sig.name, std::move(fields));
    }
    global_->bind(def->name, ready(make_matcher(declare_adt_matcher(def->name, std::move(ctors)))));
    return std::nullopt;
  }
  return eval(std::get<ExprPtr>(form), global_);
}

namespace {

void render_into(std::string& out, const ValuePtr& v, std::size_t limit);

void render_thunk(std::string& out, const ThunkPtr& t, std::size_t limit) { render_into(out, t->force(), limit); }

void render_into(std::string& out, const ValuePtr& v, std::size_t limit) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntVal>) {
          out += node.value.str();
        } else if constexpr (std::is_same_v<T, DataVal>) {
          out += "<" + node.ctor;
          for (const auto& a : node.args) {
            out += ' ';
            render_thunk(out, a, limit);
          }
          out += '>';
        } else if constexpr (std::is_same_v<T, TupleVal>) {
          out += '[';
          for (std::size_t i = 0; i < node.elems.size(); ++i) {
            if (i) out += ' ';
            render_thunk(out, node.elems[i], limit);
          }
          out += ']';
        } else if constexpr (std::is_same_v<T, CollVal>) {
          out += '{';
          const CollVal* cell = &node;
          ValuePtr hold = v;
          std::size_t shown = 0;
          while (!cell->empty()) {
            if (limit && shown == limit) {
              out += shown ? " ..." : "...";
              break;
            }
            if (shown) out += ' ';
            render_thunk(out, cell->head, limit);
            ++shown;
            hold = cell->tail->force();
            cell = hold->as<CollVal>();
            if (!cell) throw Error(ErrorKind::TypeError, "malformed collection tail");
          }
          out += '}';
        } else if constexpr (std::is_same_v<T, Closure>) {
          out += "#<lambda>";
        } else if constexpr (std::is_same_v<T, Builtin>) {
          out += "#<builtin " + node.name + ">";
        } else if constexpr (std::is_same_v<T, MatcherVal>) {
          out += "#<matcher " + describe(*node.matcher) + ">";
        }
      },
      v->node);
}

}  // namespace

std::string Interpreter::render(const ValuePtr& value) const {
  std::string out;
  render_into(out, value, options_.print_limit);
  return out;
}

std::string Interpreter::render(const ThunkPtr& value) const { return render(value->force()); }

std::string render_error(const std::exception& error) { return std::string("Error: ") + error.what(); }

}  // namespace nfm
