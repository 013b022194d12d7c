#include <algorithm>
#include <cctype>
#include <set>

#include "nfm/error.hpp"
#include "nfm/syntax.hpp"

namespace nfm {

bool is_data_ctor_name(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name.front()));
}

bool is_pattern_ctor_name(std::string_view name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name.front()));
}

namespace {

[[noreturn]] void syntax_error(const SourceForm& form, const std::string& reason) {
  throw Error(ErrorKind::SyntaxError, reason + " in `" + render_form(form) + "` at " + to_string(form.pos));
}

bool is_integer_text(std::string_view text) {
  std::size_t i = (text.size() > 1 && text.front() == '-') ? 1 : 0;
  if (i == text.size()) return false;
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i), text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_identifier(std::string_view text) {
  if (text.empty() || text == "..." || is_integer_text(text)) return false;
  if (std::isdigit(static_cast<unsigned char>(text.front()))) return false;
  return text.find_first_of("$,_") == std::string_view::npos;
}

// `$name` -> `name`, or empty when the atom is not a plain pattern variable.
std::string pattern_variable_name(const SourceForm& form) {
  if (form.kind != SourceForm::Kind::Atom || form.text.size() < 2 || form.text.front() != '$') return {};
  std::string name = form.text.substr(1);
  return is_identifier(name) ? name : std::string{};
}

template <typename Node>
ExprPtr make_expr(Node node, Position pos) {
  return std::make_shared<const Expr>(Expr{std::move(node), pos});
}

template <typename Node>
PatternPtr make_pattern(Node node, Position pos) {
  return std::make_shared<const Pattern>(Pattern{std::move(node), pos});
}

ExprPtr parse_index(const SourceForm& form) {
  if (form.kind == SourceForm::Kind::Atom) {
    if (is_integer_text(form.text)) return make_expr(IntConst{Integer(form.text)}, form.pos);
    if (is_identifier(form.text)) return make_expr(Var{form.text}, form.pos);
  }
  if (form.is_group(Delim::Paren)) return parse_expr(form);
  syntax_error(form, "index must be an integer, a variable, or a parenthesized expression");
}

std::vector<ExprPtr> parse_indices(const SourceForm& form) {
  std::vector<ExprPtr> indices;
  for (const auto& child : form.children) indices.push_back(parse_index(child));
  return indices;
}

void collect_pattern_names(const Pattern& pattern, std::set<std::string>& names) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, PatVar> || std::is_same_v<T, IndexedPatVar>) {
          names.insert(node.name);
        } else if constexpr (std::is_same_v<T, InductivePat>) {
          for (const auto& arg : node.args) collect_pattern_names(*arg, names);
        } else if constexpr (std::is_same_v<T, LoopPat>) {
          names.insert(node.var);
          collect_pattern_names(*node.repeat, names);
          collect_pattern_names(*node.tail, names);
        }
      },
      pattern.node);
}

// A value-pattern may only refer to pattern variables bound to its left.
void check_binding_order(const Pattern& pattern, const std::set<std::string>& all,
                         std::set<std::string>& seen) {
  auto check_expr = [&](const Expr& expr) {
    for (const auto& name : free_variables(expr)) {
      if (all.count(name) && !seen.count(name)) {
        throw Error(ErrorKind::SyntaxError, "value-pattern refers to pattern variable `" + name +
                                                "` before it is bound, at " + to_string(expr.pos));
      }
    }
  };
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, PatVar>) {
          seen.insert(node.name);
        } else if constexpr (std::is_same_v<T, IndexedPatVar>) {
          seen.insert(node.name);
        } else if constexpr (std::is_same_v<T, ValuePat>) {
          check_expr(*node.expr);
        } else if constexpr (std::is_same_v<T, InductivePat>) {
          for (const auto& arg : node.args) check_binding_order(*arg, all, seen);
        } else if constexpr (std::is_same_v<T, LoopPat>) {
          check_expr(*node.start);
          check_expr(*node.end);
          seen.insert(node.var);
          check_binding_order(*node.repeat, all, seen);
          check_binding_order(*node.tail, all, seen);
        }
      },
      pattern.node);
}

// Follows the last-argument chain of a loop's repeat-pattern.
bool chain_ends_in_placeholder(const Pattern& pattern) {
  const Pattern* p = &pattern;
  for (;;) {
    if (std::holds_alternative<LoopPlaceholder>(p->node)) return true;
    if (const auto* ind = std::get_if<InductivePat>(&p->node)) {
      if (ind->args.empty()) return false;
      p = ind->args.back().get();
    } else if (const auto* loop = std::get_if<LoopPat>(&p->node)) {
      p = loop->tail.get();
    } else {
      return false;
    }
  }
}

PatternPtr parse_pattern_in(const SourceForm& form, bool placeholder_allowed) {
  switch (form.kind) {
    case SourceForm::Kind::Atom: {
      if (form.text == "_") return make_pattern(Wildcard{}, form.pos);
      if (form.text == "...") {
        if (!placeholder_allowed) {
          throw Error(ErrorKind::MisplacedEllipsis,
                      "`...` must end the last-argument chain of a loop's repeat-pattern, at " +
                          to_string(form.pos));
        }
        return make_pattern(LoopPlaceholder{}, form.pos);
      }
      std::string name = pattern_variable_name(form);
      if (name.empty()) syntax_error(form, "expected a pattern");
      return make_pattern(PatVar{name}, form.pos);
    }
    case SourceForm::Kind::Indexed: {
      if (form.text.size() < 2 || form.text.front() != '$' || !is_identifier(form.text.substr(1))) {
        syntax_error(form, "expected an indexed pattern variable `$name_index`");
      }
      return make_pattern(IndexedPatVar{form.text.substr(1), parse_indices(form)}, form.pos);
    }
    case SourceForm::Kind::Comma:
      return make_pattern(ValuePat{parse_expr(form.children.front())}, form.pos);
    case SourceForm::Kind::Group:
      break;
  }

  if (form.delim == Delim::Angle) {
    const SourceForm& head = form.children.front();
    if (head.kind != SourceForm::Kind::Atom || !is_identifier(head.text)) {
      syntax_error(form, "inductive pattern needs a constructor name");
    }
    if (!is_pattern_ctor_name(head.text)) {
      syntax_error(form, "data constructor in pattern position (pattern constructors are lowercase)");
    }
    InductivePat ind{head.text, {}};
    for (std::size_t i = 1; i < form.children.size(); ++i) {
      bool last = i + 1 == form.children.size();
      ind.args.push_back(parse_pattern_in(form.children[i], last && placeholder_allowed));
    }
    return make_pattern(std::move(ind), form.pos);
  }

  if (form.delim == Delim::Paren && !form.children.empty() && form.children.front().is_atom("loop")) {
    if (form.children.size() != 5) syntax_error(form, "loop-pattern takes `$var [start end] repeat tail`");
    std::string var = pattern_variable_name(form.children[1]);
    if (var.empty()) syntax_error(form, "loop-pattern needs a pattern variable");
    const SourceForm& range = form.children[2];
    if (!range.is_group(Delim::Bracket) || range.children.size() != 2) {
      syntax_error(form, "loop-pattern range must be `[start end]`");
    }
    PatternPtr repeat = parse_pattern_in(form.children[3], true);
    if (!chain_ends_in_placeholder(*repeat)) {
      syntax_error(form, "loop repeat-pattern must end its last-argument chain with `...`");
    }
    PatternPtr tail = parse_pattern_in(form.children[4], placeholder_allowed);
    return make_pattern(LoopPat{var, parse_expr(range.children[0]), parse_expr(range.children[1]),
                                std::move(repeat), std::move(tail)},
                        form.pos);
  }

  syntax_error(form, "expected a pattern");
}

MatchClause parse_clause(const SourceForm& form) {
  if (!form.is_group(Delim::Bracket) || form.children.size() != 2) {
    syntax_error(form, "match clause must be `[pattern body]`");
  }
  MatchClause clause{parse_pattern(form.children[0]), parse_expr(form.children[1])};
  std::set<std::string> all;
  collect_pattern_names(*clause.pattern, all);
  std::set<std::string> seen;
  check_binding_order(*clause.pattern, all, seen);
  return clause;
}

std::vector<ExprPtr> parse_exprs(const std::vector<SourceForm>& forms, std::size_t from) {
  std::vector<ExprPtr> out;
  for (std::size_t i = from; i < forms.size(); ++i) out.push_back(parse_expr(forms[i]));
  return out;
}

ExprPtr parse_paren(const SourceForm& form) {
  if (form.children.empty()) syntax_error(form, "empty application");
  const SourceForm& head = form.children.front();
  const auto& kids = form.children;

  if (head.is_atom("lambda")) {
    if (kids.size() != 3 || !kids[1].is_group(Delim::Bracket)) {
      syntax_error(form, "lambda takes `[$param ...] body`");
    }
    Lambda lambda;
    for (const auto& param : kids[1].children) {
      std::string name = pattern_variable_name(param);
      if (name.empty()) syntax_error(param, "lambda parameter must be a pattern variable");
      if (std::find(lambda.params.begin(), lambda.params.end(), name) != lambda.params.end()) {
        syntax_error(form, "duplicate lambda parameter `" + name + "`");
      }
      lambda.params.push_back(name);
    }
    lambda.body = parse_expr(kids[2]);
    return make_expr(std::move(lambda), form.pos);
  }
  if (head.is_atom("match-all")) {
    if (kids.size() != 4) syntax_error(form, "match-all takes a target, a matcher and one clause");
    return make_expr(MatchAllExpr{parse_expr(kids[1]), parse_expr(kids[2]), parse_clause(kids[3])}, form.pos);
  }
  if (head.is_atom("match")) {
    if (kids.size() != 4 || !kids[3].is_group(Delim::Brace)) {
      syntax_error(form, "match takes a target, a matcher and `{clause ...}`");
    }
    MatchExpr match{parse_expr(kids[1]), parse_expr(kids[2]), {}};
    for (const auto& clause : kids[3].children) match.clauses.push_back(parse_clause(clause));
    return make_expr(std::move(match), form.pos);
  }
  if (head.is_atom("loop")) syntax_error(form, "loop is only valid in pattern position");
  if (head.is_atom("define") || head.is_atom("define-matcher")) {
    syntax_error(form, "definitions are only allowed at top level");
  }
  return make_expr(Apply{parse_expr(head), parse_exprs(kids, 1)}, form.pos);
}

}  // namespace

PatternPtr parse_pattern(const SourceForm& form) { return parse_pattern_in(form, false); }

ExprPtr parse_expr(const SourceForm& form) {
  switch (form.kind) {
    case SourceForm::Kind::Atom:
      if (is_integer_text(form.text)) return make_expr(IntConst{Integer(form.text)}, form.pos);
      if (form.text == "_") syntax_error(form, "wildcard in expression position");
      if (form.text == "...") syntax_error(form, "`...` in expression position");
      if (!form.text.empty() && form.text.front() == '$') syntax_error(form, "pattern variable in expression position");
      if (!is_identifier(form.text)) syntax_error(form, "malformed identifier");
      return make_expr(Var{form.text}, form.pos);
    case SourceForm::Kind::Indexed:
      if (!is_identifier(form.text)) syntax_error(form, "malformed indexed variable");
      return make_expr(IndexedVar{form.text, parse_indices(form)}, form.pos);
    case SourceForm::Kind::Comma:
      syntax_error(form, "value-pattern in expression position");
    case SourceForm::Kind::Group:
      break;
  }
  switch (form.delim) {
    case Delim::Bracket:
      return make_expr(TupleExpr{parse_exprs(form.children, 0)}, form.pos);
    case Delim::Brace:
      return make_expr(CollectionExpr{parse_exprs(form.children, 0)}, form.pos);
    case Delim::Angle: {
      const SourceForm& head = form.children.front();
      if (head.kind != SourceForm::Kind::Atom || !is_identifier(head.text)) {
        syntax_error(form, "algebraic data needs a constructor name");
      }
      if (!is_data_ctor_name(head.text)) {
        syntax_error(form, "pattern constructor in expression position (data constructors are capitalized)");
      }
      return make_expr(DataExpr{head.text, parse_exprs(form.children, 1)}, form.pos);
    }
    case Delim::Paren:
      return parse_paren(form);
  }
  syntax_error(form, "unexpected form");
}

TopForm parse_top(const SourceForm& form) {
  if (form.is_group(Delim::Paren) && !form.children.empty()) {
    const auto& kids = form.children;
    if (kids.front().is_atom("define")) {
      if (kids.size() != 3) syntax_error(form, "define takes a pattern variable and an expression");
      std::string name = pattern_variable_name(kids[1]);
      if (name.empty()) syntax_error(form, "define needs a pattern variable `$name`");
      return Define{name, parse_expr(kids[2])};
    }
    if (kids.front().is_atom("define-matcher")) {
      if (kids.size() != 3 || !kids[2].is_group(Delim::Brace)) {
        syntax_error(form, "define-matcher takes `$name {[<ctor matcher ...>] ...}`");
      }
      DefineMatcher def{pattern_variable_name(kids[1]), {}};
      if (def.name.empty()) syntax_error(form, "define-matcher needs a pattern variable `$name`");
      for (const auto& group : kids[2].children) {
        if (!group.is_group(Delim::Bracket) || group.children.size() != 1 ||
            !group.children.front().is_group(Delim::Angle)) {
          syntax_error(group, "constructor signature must be `[<ctor matcher ...>]`");
        }
        const SourceForm& sig = group.children.front();
        const SourceForm& ctor = sig.children.front();
        if (ctor.kind != SourceForm::Kind::Atom || !is_identifier(ctor.text) || !is_pattern_ctor_name(ctor.text)) {
          syntax_error(sig, "constructor signature needs a lowercase constructor name");
        }
        def.ctors.push_back(CtorSignature{ctor.text, parse_exprs(sig.children, 1)});
      }
      return def;
    }
  }
  return parse_expr(form);
}

std::vector<TopForm> parse_program(std::string_view text) {
  std::vector<TopForm> program;
  for (const auto& form : read_forms(text)) program.push_back(parse_top(form));
  return program;
}

// ---------------------------------------------------------------------------

namespace {

void pattern_free_variables(const Pattern& pattern, std::set<std::string>& bound,
                            std::vector<std::string>& out);

void expr_free_variables(const Expr& expr, std::set<std::string> bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& name) {
    if (!bound.count(name) && std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  auto clause_vars = [&](const MatchClause& clause) {
    std::set<std::string> inner = bound;
    pattern_free_variables(*clause.pattern, inner, out);
    expr_free_variables(*clause.body, inner, out);
  };
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Var>) {
          note(node.name);
        } else if constexpr (std::is_same_v<T, IndexedVar>) {
          note(node.name);
          for (const auto& i : node.indices) expr_free_variables(*i, bound, out);
        } else if constexpr (std::is_same_v<T, DataExpr>) {
          for (const auto& a : node.args) expr_free_variables(*a, bound, out);
        } else if constexpr (std::is_same_v<T, TupleExpr> || std::is_same_v<T, CollectionExpr>) {
          for (const auto& e : node.elems) expr_free_variables(*e, bound, out);
        } else if constexpr (std::is_same_v<T, Lambda>) {
          std::set<std::string> inner = bound;
          inner.insert(node.params.begin(), node.params.end());
          expr_free_variables(*node.body, inner, out);
        } else if constexpr (std::is_same_v<T, MatchAllExpr>) {
          expr_free_variables(*node.target, bound, out);
          expr_free_variables(*node.matcher, bound, out);
          clause_vars(node.clause);
        } else if constexpr (std::is_same_v<T, MatchExpr>) {
          expr_free_variables(*node.target, bound, out);
          expr_free_variables(*node.matcher, bound, out);
          for (const auto& c : node.clauses) clause_vars(c);
        } else if constexpr (std::is_same_v<T, Apply>) {
          expr_free_variables(*node.fn, bound, out);
          for (const auto& a : node.args) expr_free_variables(*a, bound, out);
        }
      },
      expr.node);
}

void pattern_free_variables(const Pattern& pattern, std::set<std::string>& bound,
                            std::vector<std::string>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, PatVar>) {
          bound.insert(node.name);
        } else if constexpr (std::is_same_v<T, IndexedPatVar>) {
          for (const auto& i : node.indices) expr_free_variables(*i, bound, out);
          bound.insert(node.name);
        } else if constexpr (std::is_same_v<T, ValuePat>) {
          expr_free_variables(*node.expr, bound, out);
        } else if constexpr (std::is_same_v<T, InductivePat>) {
          for (const auto& a : node.args) pattern_free_variables(*a, bound, out);
        } else if constexpr (std::is_same_v<T, LoopPat>) {
          expr_free_variables(*node.start, bound, out);
          expr_free_variables(*node.end, bound, out);
          bound.insert(node.var);
          pattern_free_variables(*node.repeat, bound, out);
          pattern_free_variables(*node.tail, bound, out);
        }
      },
      pattern.node);
}

}  // namespace

std::vector<std::string> free_variables(const Expr& expr) {
  std::vector<std::string> out;
  expr_free_variables(expr, {}, out);
  return out;
}

}  // namespace nfm
