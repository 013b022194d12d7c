#include "nfm/syntax.hpp"

namespace nfm {

namespace {

template <typename Range, typename Fn>
std::string join(const Range& items, Fn&& fn) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += ' ';
    first = false;
    out += fn(item);
  }
  return out;
}

std::string print_index(const Expr& index, const PrintHooks* hooks) {
  // Indices that are not plain integers or variables are always applications,
  // which print with their own parentheses.
  return print_expr(index, hooks);
}

std::string print_clause(const MatchClause& clause, const PrintHooks* hooks) {
  return "[" + print_pattern(*clause.pattern, hooks) + " " + print_expr(*clause.body, hooks) + "]";
}

}  // namespace

std::string print_expr(const Expr& expr, const PrintHooks* hooks) {
  auto sub = [hooks](const ExprPtr& e) { return print_expr(*e, hooks); };
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntConst>) {
          return node.value.str();
        } else if constexpr (std::is_same_v<T, Var>) {
          if (hooks && hooks->variable) {
            if (auto replaced = hooks->variable(node.name)) return *replaced;
          }
          return node.name;
        } else if constexpr (std::is_same_v<T, IndexedVar>) {
          std::string out = node.name;
          for (const auto& i : node.indices) out += "_" + print_index(*i, hooks);
          return out;
        } else if constexpr (std::is_same_v<T, DataExpr>) {
          return "<" + node.ctor + (node.args.empty() ? "" : " " + join(node.args, sub)) + ">";
        } else if constexpr (std::is_same_v<T, TupleExpr>) {
          return "[" + join(node.elems, sub) + "]";
        } else if constexpr (std::is_same_v<T, CollectionExpr>) {
          return "{" + join(node.elems, sub) + "}";
        } else if constexpr (std::is_same_v<T, Lambda>) {
          return "(lambda [" + join(node.params, [](const std::string& p) { return "$" + p; }) + "] " +
                 sub(node.body) + ")";
        } else if constexpr (std::is_same_v<T, MatchAllExpr>) {
          return "(match-all " + sub(node.target) + " " + sub(node.matcher) + " " +
                 print_clause(node.clause, hooks) + ")";
        } else if constexpr (std::is_same_v<T, MatchExpr>) {
          return "(match " + sub(node.target) + " " + sub(node.matcher) + " {" +
                 join(node.clauses, [hooks](const MatchClause& c) { return print_clause(c, hooks); }) + "})";
        } else if constexpr (std::is_same_v<T, Apply>) {
          return "(" + sub(node.fn) + (node.args.empty() ? "" : " " + join(node.args, sub)) + ")";
        }
      },
      expr.node);
}

std::string print_pattern(const Pattern& pattern, const PrintHooks* hooks) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Wildcard>) {
          return "_";
        } else if constexpr (std::is_same_v<T, PatVar>) {
          return "$" + node.name;
        } else if constexpr (std::is_same_v<T, IndexedPatVar>) {
          std::string out = "$" + node.name;
          for (const auto& i : node.indices) out += "_" + print_index(*i, hooks);
          return out;
        } else if constexpr (std::is_same_v<T, ValuePat>) {
          return "," + print_expr(*node.expr, hooks);
        } else if constexpr (std::is_same_v<T, InductivePat>) {
          std::string out = "<" + node.ctor;
          for (const auto& arg : node.args) out += " " + print_pattern(*arg, hooks);
          return out + ">";
        } else if constexpr (std::is_same_v<T, LoopPat>) {
          // The repeat-pattern owns its own `...` and rebinds the loop variable.
          PrintHooks inner;
          if (hooks && hooks->variable) {
            inner.variable = [outer = hooks->variable, var = node.var](const std::string& name)
                -> std::optional<std::string> {
              if (name == var) return std::nullopt;
              return outer(name);
            };
          }
          return "(loop $" + node.var + " [" + print_expr(*node.start, hooks) + " " +
                 print_expr(*node.end, hooks) + "] " + print_pattern(*node.repeat, &inner) + " " +
                 print_pattern(*node.tail, hooks) + ")";
        } else if constexpr (std::is_same_v<T, LoopPlaceholder>) {
          if (hooks && hooks->placeholder) return hooks->placeholder();
          return "...";
        }
      },
      pattern.node);
}

std::string print_top(const TopForm& form) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Define>) {
          return "(define $" + node.name + " " + print_expr(*node.value) + ")";
        } else if constexpr (std::is_same_v<T, DefineMatcher>) {
          std::string out = "(define-matcher $" + node.name + " {";
          for (std::size_t i = 0; i < node.ctors.size(); ++i) {
            if (i) out += ' ';
            out += "[<" + node.ctors[i].name;
            for (const auto& f : node.ctors[i].fields) out += " " + print_expr(*f);
            out += ">]";
          }
          return out + "})";
        } else {
          return print_expr(*node);
        }
      },
      form);
}

}  // namespace nfm
