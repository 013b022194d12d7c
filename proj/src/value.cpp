#include "nfm/value.hpp"

#include "nfm/error.hpp"

namespace nfm {

ValuePtr make_int(Integer v) { return std::make_shared<const Value>(Value{IntVal{std::move(v)}}); }

ValuePtr make_data(std::string ctor, std::vector<ThunkPtr> args) {
  return std::make_shared<const Value>(Value{DataVal{std::move(ctor), std::move(args)}});
}

ValuePtr make_bool(bool b) {
  static const ValuePtr yes = make_data("True");
  static const ValuePtr no = make_data("False");
  return b ? yes : no;
}

ValuePtr make_tuple(std::vector<ThunkPtr> elems) {
  return std::make_shared<const Value>(Value{TupleVal{std::move(elems)}});
}

ValuePtr make_empty() {
  static const ValuePtr empty = std::make_shared<const Value>(Value{CollVal{}});
  return empty;
}

ValuePtr make_cell(ThunkPtr head, ThunkPtr tail) {
  return std::make_shared<const Value>(Value{CollVal{std::move(head), std::move(tail)}});
}

ValuePtr make_matcher(MatcherPtr m) { return std::make_shared<const Value>(Value{MatcherVal{std::move(m)}}); }

ValuePtr make_collection(std::span<const ThunkPtr> elems) {
  ValuePtr out = make_empty();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) out = make_cell(*it, ready(out));
  return out;
}

ThunkPtr prepend(std::span<const ThunkPtr> elems, ThunkPtr rest) {
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) rest = ready(make_cell(*it, rest));
  return rest;
}

std::string type_name(const Value& v) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntVal>) return "integer";
        if constexpr (std::is_same_v<T, DataVal>) return "data <" + node.ctor + ">";
        if constexpr (std::is_same_v<T, TupleVal>) return "tuple";
        if constexpr (std::is_same_v<T, CollVal>) return "collection";
        if constexpr (std::is_same_v<T, Closure>) return "function";
        if constexpr (std::is_same_v<T, Builtin>) return "builtin " + node.name;
        if constexpr (std::is_same_v<T, MatcherVal>) return "matcher";
      },
      v.node);
}

const ValuePtr& Thunk::force() {
  if (state_ == State::Done) return value_;
  if (state_ == State::Forcing) throw Error(ErrorKind::BlackHole, "value depends on itself");
  state_ = State::Forcing;
  ValuePtr v;
  try {
    v = compute_();
  } catch (...) {
    state_ = State::Pending;
    throw;
  }
  value_ = std::move(v);
  compute_ = nullptr;
  state_ = State::Done;
  auto& c = counters();
  ++c.thunks_forced;
  if (value_->as<CollVal>()) ++c.cells_forced;
  return value_;
}

ThunkPtr ready(ValuePtr value) { return std::make_shared<Thunk>(std::move(value)); }
ThunkPtr lazy(Thunk::Compute compute) { return std::make_shared<Thunk>(std::move(compute)); }

Counters& counters() {
  thread_local Counters c;
  return c;
}

std::string indexed_key(const std::string& name, std::span<const std::int64_t> indexes) {
  std::string key = name;
  for (auto i : indexes) key += "_" + std::to_string(i);
  return key;
}

void Frame::bind(std::string key, ThunkPtr value) { entries_[std::move(key)] = std::move(value); }

ThunkPtr Frame::lookup_local(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : it->second;
}

ThunkPtr Frame::lookup(const std::string& key) const {
  for (const Frame* f = this; f; f = f->parent_.get()) {
    if (auto t = f->lookup_local(key)) return t;
  }
  return nullptr;
}

std::vector<std::string> Frame::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

Env extend(Env parent, std::vector<std::pair<std::string, ThunkPtr>> bindings) {
  auto frame = std::make_shared<Frame>(std::move(parent));
  for (auto& [k, v] : bindings) frame->bind(std::move(k), std::move(v));
  return frame;
}

}  // namespace nfm
