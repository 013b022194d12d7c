#include "nfm/matcher.hpp"

#include <bit>
#include <cctype>
#include <functional>

#include "nfm/error.hpp"

namespace nfm {

const AdtCtor* AdtSignature::by_pattern(const std::string& n) const {
  for (const auto& c : ctors) {
    if (c.pattern_name == n) return &c;
  }
  return nullptr;
}

const AdtCtor* AdtSignature::by_data(const std::string& n) const {
  for (const auto& c : ctors) {
    if (c.data_name == n) return &c;
  }
  return nullptr;
}

namespace {

MatcherPtr make(Matcher::Kind kind, std::vector<MatcherPtr> params = {}) {
  return std::make_shared<const Matcher>(Matcher{kind, std::move(params), nullptr});
}

}  // namespace

MatcherPtr something_matcher() {
  static const MatcherPtr m = make(Matcher::Kind::Something);
  return m;
}
MatcherPtr eq_matcher() {
  static const MatcherPtr m = make(Matcher::Kind::Eq);
  return m;
}
MatcherPtr integer_matcher() {
  static const MatcherPtr m = make(Matcher::Kind::Integer);
  return m;
}
MatcherPtr list_of(MatcherPtr element) { return make(Matcher::Kind::List, {std::move(element)}); }
MatcherPtr multiset_of(MatcherPtr element) { return make(Matcher::Kind::Multiset, {std::move(element)}); }
MatcherPtr set_of(MatcherPtr element) { return make(Matcher::Kind::Set, {std::move(element)}); }
MatcherPtr tuple_of(std::vector<MatcherPtr> components) {
  return make(Matcher::Kind::Tuple, std::move(components));
}

MatcherPtr declare_adt_matcher(std::string name,
                               std::vector<std::pair<std::string, std::vector<MatcherPtr>>> ctors) {
  auto sig = std::make_shared<AdtSignature>();
  sig->name = std::move(name);
  for (auto& [ctor, fields] : ctors) {
    if (sig->by_pattern(ctor)) {
      throw Error(ErrorKind::DuplicateConstructor, "`" + ctor + "` declared twice in matcher " + sig->name);
    }
    std::string data = ctor;
    data.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(data.front())));
    sig->ctors.push_back(AdtCtor{ctor, data, std::move(fields)});
  }
  return std::make_shared<const Matcher>(Matcher{Matcher::Kind::Adt, {}, std::move(sig)});
}

MatcherPtr as_matcher(const ValuePtr& value) {
  if (const auto* m = value->as<MatcherVal>()) return m->matcher;
  if (const auto* t = value->as<TupleVal>()) {
    std::vector<MatcherPtr> parts;
    for (const auto& e : t->elems) parts.push_back(as_matcher(e->force()));
    return tuple_of(std::move(parts));
  }
  throw Error(ErrorKind::TypeError, "expected a matcher, got " + type_name(*value));
}

std::string describe(const Matcher& m) {
  switch (m.kind) {
    case Matcher::Kind::Something: return "something";
    case Matcher::Kind::Eq: return "eq";
    case Matcher::Kind::Integer: return "integer";
    case Matcher::Kind::List: return "(list " + describe(*m.element()) + ")";
    case Matcher::Kind::Multiset: return "(multiset " + describe(*m.element()) + ")";
    case Matcher::Kind::Set: return "(set " + describe(*m.element()) + ")";
    case Matcher::Kind::Tuple: {
      std::string out = "[";
      for (std::size_t i = 0; i < m.params.size(); ++i) out += (i ? " " : "") + describe(*m.params[i]);
      return out + "]";
    }
    case Matcher::Kind::Adt: return m.adt->name;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

namespace {

const CollVal& force_coll(const ThunkPtr& t) {
  const auto& v = t->force();
  const auto* c = v->as<CollVal>();
  if (!c) throw Error(ErrorKind::TypeError, "collection matcher applied to " + type_name(*v));
  return *c;
}

class Finite final : public Decomposition {
 public:
  Finite() = default;
  explicit Finite(Alternative alt) { alts_.push_back(std::move(alt)); }

  std::optional<Alternative> next() override {
    if (index_ >= alts_.size()) return std::nullopt;
    return std::move(alts_[index_++]);
  }

 private:
  std::vector<Alternative> alts_;
  std::size_t index_ = 0;
};

// Deferred so that building the stream never forces the target.
class Deferred final : public Decomposition {
 public:
  explicit Deferred(std::function<std::optional<Alternative>()> once) : once_(std::move(once)) {}

  std::optional<Alternative> next() override {
    if (!once_) return std::nullopt;
    auto fn = std::move(once_);
    once_ = nullptr;
    return fn();
  }

 private:
  std::function<std::optional<Alternative>()> once_;
};

// list/join: split points 0, 1, 2, ... in increasing order.
class ListJoin final : public Decomposition {
 public:
  ListJoin(ThunkPtr target, MatcherPtr self) : rest_(std::move(target)), self_(std::move(self)) {}

  std::optional<Alternative> next() override {
    if (started_) {
      const CollVal& cell = force_coll(rest_);
      if (cell.empty()) return std::nullopt;
      prefix_.push_back(cell.head);
      rest_ = cell.tail;
    }
    started_ = true;
    return Alternative{{ready(make_collection(prefix_)), self_}, {rest_, self_}};
  }

 private:
  ThunkPtr rest_;
  MatcherPtr self_;
  std::vector<ThunkPtr> prefix_;
  bool started_ = false;
};

// multiset/cons and set/cons: one alternative per position of the target.
class PickEach final : public Decomposition {
 public:
  PickEach(ThunkPtr target, MatcherPtr self, bool keep_whole)
      : whole_(target), cursor_(std::move(target)), self_(std::move(self)), keep_whole_(keep_whole) {}

  std::optional<Alternative> next() override {
    const CollVal& cell = force_coll(cursor_);
    if (cell.empty()) return std::nullopt;
    ThunkPtr rest = keep_whole_ ? whole_ : prepend(prefix_, cell.tail);
    Alternative alt{{cell.head, self_->element()}, {rest, self_}};
    if (!keep_whole_) prefix_.push_back(cell.head);
    cursor_ = cell.tail;
    return alt;
  }

 private:
  ThunkPtr whole_;
  ThunkPtr cursor_;
  MatcherPtr self_;
  bool keep_whole_;
  std::vector<ThunkPtr> prefix_;
};

// multiset/join and set/join: index subsets in binary-counting order, i.e.
// by increasing highest selected position. Works on infinite targets.
class SubsetSplit final : public Decomposition {
 public:
  SubsetSplit(ThunkPtr target, MatcherPtr self, bool keep_whole)
      : whole_(target), after_(std::move(target)), self_(std::move(self)), keep_whole_(keep_whole) {}

  std::optional<Alternative> next() override {
    if (done_) return std::nullopt;
    if (mask_ == 0) {
      mask_ = 1;
      return Alternative{{ready(make_empty()), self_}, {whole_, self_}};
    }
    const std::size_t high = static_cast<std::size_t>(std::bit_width(mask_) - 1);
    while (heads_.size() <= high) {
      const CollVal& cell = force_coll(after_);
      if (cell.empty()) {
        done_ = true;
        return std::nullopt;
      }
      heads_.push_back(cell.head);
      tails_.push_back(cell.tail);
      after_ = cell.tail;
    }
    std::vector<ThunkPtr> selected, unselected;
    for (std::size_t i = 0; i <= high; ++i) {
      ((mask_ >> i) & 1U ? selected : unselected).push_back(heads_[i]);
    }
    ThunkPtr rest = keep_whole_ ? whole_ : prepend(unselected, tails_[high]);
    if (mask_ == (std::uint64_t{1} << 63)) {
      done_ = true;
    } else {
      ++mask_;
    }
    return Alternative{{ready(make_collection(selected)), self_}, {rest, self_}};
  }

 private:
  ThunkPtr whole_;
  ThunkPtr after_;
  MatcherPtr self_;
  bool keep_whole_;
  std::vector<ThunkPtr> heads_;
  std::vector<ThunkPtr> tails_;
  std::uint64_t mask_ = 0;
  bool done_ = false;
};

[[noreturn]] void mismatch(const Matcher& m, const std::string& ctor, std::size_t arity) {
  throw Error(ErrorKind::MatcherMismatch, describe(m) + " has no pattern constructor <" + ctor + "> with " +
                                              std::to_string(arity) + " argument(s)");
}

std::unique_ptr<Decomposition> decompose_collection(const MatcherPtr& m, const std::string& ctor,
                                                    std::size_t arity, const ThunkPtr& target) {
  if (ctor == "nil" && arity == 0) {
    return std::make_unique<Deferred>([target]() -> std::optional<Alternative> {
      if (force_coll(target).empty()) return Alternative{};
      return std::nullopt;
    });
  }
  if (ctor == "cons" && arity == 2) {
    switch (m->kind) {
      case Matcher::Kind::List:
        return std::make_unique<Deferred>([target, m]() -> std::optional<Alternative> {
          const CollVal& cell = force_coll(target);
          if (cell.empty()) return std::nullopt;
          return Alternative{{cell.head, m->element()}, {cell.tail, m}};
        });
      case Matcher::Kind::Multiset: return std::make_unique<PickEach>(target, m, false);
      default: return std::make_unique<PickEach>(target, m, true);
    }
  }
  if (ctor == "join" && arity == 2) {
    switch (m->kind) {
      case Matcher::Kind::List: return std::make_unique<ListJoin>(target, m);
      case Matcher::Kind::Multiset: return std::make_unique<SubsetSplit>(target, m, false);
      default: return std::make_unique<SubsetSplit>(target, m, true);
    }
  }
  mismatch(*m, ctor, arity);
}

}  // namespace

std::unique_ptr<Decomposition> decompose(const MatcherPtr& matcher, const std::string& ctor,
                                         std::size_t arity, const ThunkPtr& target) {
  if (matcher->is_collection()) return decompose_collection(matcher, ctor, arity, target);
  if (matcher->kind == Matcher::Kind::Adt) {
    const AdtCtor* sig = matcher->adt->by_pattern(ctor);
    if (!sig || sig->fields.size() != arity) mismatch(*matcher, ctor, arity);
    return std::make_unique<Deferred>([sig, target]() -> std::optional<Alternative> {
      const auto& v = target->force();
      const auto* data = v->as<DataVal>();
      if (!data || data->ctor != sig->data_name || data->args.size() != sig->fields.size()) return std::nullopt;
      Alternative alt;
      for (std::size_t i = 0; i < data->args.size(); ++i) alt.push_back({data->args[i], sig->fields[i]});
      return alt;
    });
  }
  mismatch(*matcher, ctor, arity);
}

// ---------------------------------------------------------------------------
// Equality
// ---------------------------------------------------------------------------

namespace {

// Elements of a finite collection; stops early (returning cap + 1 entries)
// once the cap is exceeded.
std::vector<ThunkPtr> elements(const ThunkPtr& t, std::size_t cap) {
  std::vector<ThunkPtr> out;
  ThunkPtr cur = t;
  for (;;) {
    const CollVal& cell = force_coll(cur);
    if (cell.empty()) break;
    out.push_back(cell.head);
    if (out.size() > cap) break;
    cur = cell.tail;
  }
  return out;
}

std::pair<std::vector<ThunkPtr>, std::vector<ThunkPtr>> bounded_pair(const ThunkPtr& a, const ThunkPtr& b) {
  auto xs = elements(a, kEqualityCap);
  auto ys = elements(b, kEqualityCap);
  if (xs.size() > kEqualityCap || ys.size() > kEqualityCap) {
    throw Error(ErrorKind::EqualityTooLarge,
                "collections above " + std::to_string(kEqualityCap) + " elements are not compared");
  }
  return {std::move(xs), std::move(ys)};
}

// Kuhn's augmenting paths over the element-equality graph.
bool perfect_matching(const std::vector<std::vector<bool>>& eq) {
  const std::size_t n = eq.size();
  std::vector<int> owner(n, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!eq[i][j] || seen[j]) continue;
      seen[j] = true;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
        owner[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return false;
  }
  return true;
}

}  // namespace

bool structural_equal(const ThunkPtr& a, const ThunkPtr& b) {
  const ValuePtr& x = a->force();
  const ValuePtr& y = b->force();
  if (x == y) return true;
  if (x->node.index() != y->node.index()) return false;
  if (const auto* i = x->as<IntVal>()) return i->value == y->as<IntVal>()->value;
  if (const auto* d = x->as<DataVal>()) {
    const auto* e = y->as<DataVal>();
    if (d->ctor != e->ctor || d->args.size() != e->args.size()) return false;
    for (std::size_t k = 0; k < d->args.size(); ++k) {
      if (!structural_equal(d->args[k], e->args[k])) return false;
    }
    return true;
  }
  if (const auto* t = x->as<TupleVal>()) {
    const auto* u = y->as<TupleVal>();
    if (t->elems.size() != u->elems.size()) return false;
    for (std::size_t k = 0; k < t->elems.size(); ++k) {
      if (!structural_equal(t->elems[k], u->elems[k])) return false;
    }
    return true;
  }
  if (x->as<CollVal>()) {
    const CollVal* c = x->as<CollVal>();
    const CollVal* d = y->as<CollVal>();
    for (;;) {
      if (c->empty() || d->empty()) return c->empty() && d->empty();
      if (!structural_equal(c->head, d->head)) return false;
      c = &force_coll(c->tail);
      d = &force_coll(d->tail);
    }
  }
  throw Error(ErrorKind::TypeError, "cannot compare " + type_name(*x) + " values");
}

bool value_equal(const Matcher& m, const ThunkPtr& expected, const ThunkPtr& target) {
  switch (m.kind) {
    case Matcher::Kind::Something:
      throw Error(ErrorKind::ValuePatternUnderSomething,
                  "`something` only matches wildcards and pattern variables");
    case Matcher::Kind::Eq:
      return structural_equal(expected, target);
    case Matcher::Kind::Integer: {
      const auto* x = expected->force()->as<IntVal>();
      const auto* y = target->force()->as<IntVal>();
      if (!x || !y) throw Error(ErrorKind::TypeError, "integer matcher compares integers only");
      return x->value == y->value;
    }
    case Matcher::Kind::List: {
      const CollVal* c = &force_coll(expected);
      const CollVal* d = &force_coll(target);
      for (;;) {
        if (c->empty() || d->empty()) return c->empty() && d->empty();
        if (!value_equal(*m.element(), c->head, d->head)) return false;
        c = &force_coll(c->tail);
        d = &force_coll(d->tail);
      }
    }
    case Matcher::Kind::Multiset: {
      auto [xs, ys] = bounded_pair(expected, target);
      if (xs.size() != ys.size()) return false;
      std::vector<std::vector<bool>> eq(xs.size(), std::vector<bool>(ys.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) eq[i][j] = value_equal(*m.element(), xs[i], ys[j]);
      }
      return perfect_matching(eq);
    }
    case Matcher::Kind::Set: {
      auto [xs, ys] = bounded_pair(expected, target);
      auto covered = [&](const std::vector<ThunkPtr>& from, const std::vector<ThunkPtr>& in, bool flip) {
        for (const auto& x : from) {
          bool found = false;
          for (const auto& y : in) {
            if (flip ? value_equal(*m.element(), y, x) : value_equal(*m.element(), x, y)) {
              found = true;
              break;
            }
          }
          if (!found) return false;
        }
        return true;
      };
      return covered(xs, ys, false) && covered(ys, xs, true);
    }
    case Matcher::Kind::Tuple: {
      const auto* x = expected->force()->as<TupleVal>();
      const auto* y = target->force()->as<TupleVal>();
      if (!x || !y || x->elems.size() != m.params.size() || y->elems.size() != m.params.size()) {
        throw Error(ErrorKind::TypeError, describe(m) + " compares tuples of " +
                                              std::to_string(m.params.size()) + " elements");
      }
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (!value_equal(*m.params[i], x->elems[i], y->elems[i])) return false;
      }
      return true;
    }
    case Matcher::Kind::Adt: {
      const auto* x = expected->force()->as<DataVal>();
      const auto* y = target->force()->as<DataVal>();
      if (!x || !y) return structural_equal(expected, target);
      if (x->ctor != y->ctor || x->args.size() != y->args.size()) return false;
      const AdtCtor* sig = m.adt->by_data(x->ctor);
      if (!sig || sig->fields.size() != x->args.size()) return structural_equal(expected, target);
      for (std::size_t i = 0; i < x->args.size(); ++i) {
        if (!value_equal(*sig->fields[i], x->args[i], y->args[i])) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace nfm
