#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "nfm/syntax.hpp"

namespace nfm {

class Interpreter;
class Thunk;
struct Value;
struct Matcher;
class Frame;

using ThunkPtr = std::shared_ptr<Thunk>;
using ValuePtr = std::shared_ptr<const Value>;
using MatcherPtr = std::shared_ptr<const Matcher>;
using Env = std::shared_ptr<Frame>;

struct IntVal { Integer value; };

/// Constructor term. Booleans are the nullary terms `<True>` and `<False>`.
struct DataVal {
  std::string ctor;
  std::vector<ThunkPtr> args;
};

struct TupleVal { std::vector<ThunkPtr> elems; };

/// One cell of a lazy collection; `head == nullptr` marks the empty collection.
struct CollVal {
  ThunkPtr head;
  ThunkPtr tail;

  bool empty() const { return head == nullptr; }
};

struct Closure {
  std::vector<std::string> params;
  ExprPtr body;
  Env env;
};

struct Builtin {
  using Fn = std::function<ValuePtr(Interpreter&, std::span<const ThunkPtr>)>;
  std::string name;
  std::size_t arity;
  Fn fn;
};

struct MatcherVal { MatcherPtr matcher; };

struct Value {
  using Node = std::variant<IntVal, DataVal, TupleVal, CollVal, Closure, Builtin, MatcherVal>;
  Node node;

  template <typename T>
  const T* as() const { return std::get_if<T>(&node); }
};

ValuePtr make_int(Integer v);
ValuePtr make_data(std::string ctor, std::vector<ThunkPtr> args = {});
ValuePtr make_bool(bool b);
ValuePtr make_tuple(std::vector<ThunkPtr> elems);
ValuePtr make_empty();
ValuePtr make_cell(ThunkPtr head, ThunkPtr tail);
ValuePtr make_matcher(MatcherPtr m);

/// Finite collection whose spine is already evaluated.
ValuePtr make_collection(std::span<const ThunkPtr> elems);
/// `elems` followed by the (possibly unevaluated) collection `rest`.
ThunkPtr prepend(std::span<const ThunkPtr> elems, ThunkPtr rest);

std::string type_name(const Value& v);

/// Call-by-need cell: either a pending computation or a memoized value.
class Thunk {
 public:
  using Compute = std::function<ValuePtr()>;

  explicit Thunk(ValuePtr value) : state_(State::Done), value_(std::move(value)) {}
  explicit Thunk(Compute compute) : state_(State::Pending), compute_(std::move(compute)) {}

  /// Evaluates at most once. Forcing a thunk from inside its own computation
  /// raises BlackHole.
  const ValuePtr& force();
  bool forced() const { return state_ == State::Done; }

 private:
  enum class State { Pending, Forcing, Done };
  State state_;
  Compute compute_;
  ValuePtr value_;
};

ThunkPtr ready(ValuePtr value);
ThunkPtr lazy(Thunk::Compute compute);

/// Evaluation counters, kept per thread. Tests use them to check laziness.
struct Counters {
  std::uint64_t thunks_forced = 0;
  std::uint64_t cells_forced = 0;
};
Counters& counters();

/// Variable key for `name` with evaluated integer indexes (`a_1_2`).
std::string indexed_key(const std::string& name, std::span<const std::int64_t> indexes);

/// Lexically scoped frame. The global frame is mutable (`define`); other
/// frames are filled once at creation.
class Frame {
 public:
  explicit Frame(Env parent = nullptr) : parent_(std::move(parent)) {}

  void bind(std::string key, ThunkPtr value);
  ThunkPtr lookup(const std::string& key) const;
  ThunkPtr lookup_local(const std::string& key) const;
  const Env& parent() const { return parent_; }

  std::vector<std::string> names() const;

 private:
  Env parent_;
  std::unordered_map<std::string, ThunkPtr> entries_;
};

Env extend(Env parent, std::vector<std::pair<std::string, ThunkPtr>> bindings);

}  // namespace nfm
