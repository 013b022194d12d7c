#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nfm {

using Integer = boost::multiprecision::cpp_int;

struct Position {
  int line = 1;
  int column = 1;
};

std::string to_string(Position pos);

// ---------------------------------------------------------------------------
// Reader
// ---------------------------------------------------------------------------

enum class Delim { Paren, Bracket, Brace, Angle };

/// Raw token tree. Atoms keep their text verbatim (`$x`, `...`, `_`, `42`);
/// `a_i_(+ j 1)` becomes an Indexed form whose children are the index forms;
/// `,e` becomes a Comma form wrapping `e`.
struct SourceForm {
  enum class Kind { Atom, Indexed, Comma, Group };

  Kind kind = Kind::Atom;
  Position pos;
  std::string text;  // Atom text, or the base name of an Indexed form
  Delim delim = Delim::Paren;
  std::vector<SourceForm> children;

  bool is_atom(std::string_view t) const { return kind == Kind::Atom && text == t; }
  bool is_group(Delim d) const { return kind == Kind::Group && delim == d; }
};

/// Tokenizes a whole source text. `;` starts a comment that runs to the end
/// of the line. Throws IncompleteInput when text ends inside an open group.
std::vector<SourceForm> read_forms(std::string_view text);

/// True when `text` holds only complete forms (or a reader error that more
/// input cannot fix). Drives multi-line REPL input.
bool input_complete(std::string_view text);

std::string render_form(const SourceForm& form);

// ---------------------------------------------------------------------------
// Abstract syntax
// ---------------------------------------------------------------------------

struct Expr;
struct Pattern;
using ExprPtr = std::shared_ptr<const Expr>;
using PatternPtr = std::shared_ptr<const Pattern>;

struct MatchClause {
  PatternPtr pattern;
  ExprPtr body;
};

struct IntConst { Integer value; };
struct Var { std::string name; };
struct IndexedVar {
  std::string name;
  std::vector<ExprPtr> indices;
};
struct DataExpr {
  std::string ctor;
  std::vector<ExprPtr> args;
};
struct TupleExpr { std::vector<ExprPtr> elems; };
struct CollectionExpr { std::vector<ExprPtr> elems; };
struct Lambda {
  std::vector<std::string> params;
  ExprPtr body;
};
struct MatchAllExpr {
  ExprPtr target;
  ExprPtr matcher;
  MatchClause clause;
};
struct MatchExpr {
  ExprPtr target;
  ExprPtr matcher;
  std::vector<MatchClause> clauses;
};
struct Apply {
  ExprPtr fn;
  std::vector<ExprPtr> args;
};

struct Expr {
  using Node = std::variant<IntConst, Var, IndexedVar, DataExpr, TupleExpr, CollectionExpr,
                            Lambda, MatchAllExpr, MatchExpr, Apply>;
  Node node;
  Position pos;
};

struct Wildcard {};
struct PatVar { std::string name; };
struct IndexedPatVar {
  std::string name;
  std::vector<ExprPtr> indices;
};
struct ValuePat { ExprPtr expr; };
struct InductivePat {
  std::string ctor;
  std::vector<PatternPtr> args;
};
struct LoopPat {
  std::string var;
  ExprPtr start;
  ExprPtr end;
  PatternPtr repeat;
  PatternPtr tail;
};
struct LoopPlaceholder {};

struct Pattern {
  using Node = std::variant<Wildcard, PatVar, IndexedPatVar, ValuePat, InductivePat, LoopPat,
                            LoopPlaceholder>;
  Node node;
  Position pos;
};

struct Define {
  std::string name;
  ExprPtr value;
};

/// `(define-matcher $card {[<card eq integer>]})`: one signature per
/// constructor, written with its lowercase pattern-constructor name.
struct CtorSignature {
  std::string name;
  std::vector<ExprPtr> fields;
};
struct DefineMatcher {
  std::string name;
  std::vector<CtorSignature> ctors;
};

using TopForm = std::variant<Define, DefineMatcher, ExprPtr>;

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

TopForm parse_top(const SourceForm& form);
ExprPtr parse_expr(const SourceForm& form);
PatternPtr parse_pattern(const SourceForm& form);

/// Reads and parses every top-level form of a program.
std::vector<TopForm> parse_program(std::string_view text);

/// Free variable names of an expression (base names for indexed variables).
std::vector<std::string> free_variables(const Expr& expr);

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

/// Hooks used when printing a pattern that is part of an unrolled loop: a
/// variable renderer can replace loop variables by their current index, and
/// a placeholder renderer prints what `...` stands for.
struct PrintHooks {
  std::function<std::optional<std::string>(const std::string&)> variable;
  std::function<std::string()> placeholder;
};

std::string print_expr(const Expr& expr, const PrintHooks* hooks = nullptr);
std::string print_pattern(const Pattern& pattern, const PrintHooks* hooks = nullptr);
std::string print_top(const TopForm& form);

bool is_data_ctor_name(std::string_view name);
bool is_pattern_ctor_name(std::string_view name);

}  // namespace nfm
