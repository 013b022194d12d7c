#include "nfm/stdlib.hpp"

#include "nfm/error.hpp"
#include "nfm/interpreter.hpp"
#include "nfm/matcher.hpp"

namespace nfm {

namespace {

const Integer& int_arg(const ThunkPtr& t, const std::string& fn) {
  const ValuePtr& v = t->force();
  const auto* i = v->as<IntVal>();
  if (!i) throw Error(ErrorKind::TypeError, fn + " expects an integer, got " + type_name(*v));
  return i->value;
}

const CollVal& coll_arg(const ThunkPtr& t, const std::string& fn) {
  const ValuePtr& v = t->force();
  const auto* c = v->as<CollVal>();
  if (!c) throw Error(ErrorKind::TypeError, fn + " expects a collection, got " + type_name(*v));
  return *c;
}

bool bool_arg(const ThunkPtr& t, const std::string& fn) {
  const ValuePtr& v = t->force();
  if (const auto* d = v->as<DataVal>(); d && d->args.empty()) {
    if (d->ctor == "True") return true;
    if (d->ctor == "False") return false;
  }
  throw Error(ErrorKind::TypeError, fn + " expects <True> or <False>, got " + type_name(*v));
}

MatcherPtr matcher_arg(const ThunkPtr& t) { return as_matcher(t->force()); }

void define(Frame& frame, std::string name, std::size_t arity, Builtin::Fn fn) {
  ValuePtr v = std::make_shared<const Value>(Value{Builtin{name, arity, std::move(fn)}});
  frame.bind(std::move(name), ready(std::move(v)));
}

template <typename Op>
void arithmetic(Frame& frame, const std::string& name, Op op) {
  define(frame, name, 2, [name, op](Interpreter&, std::span<const ThunkPtr> a) {
    return make_int(op(int_arg(a[0], name), int_arg(a[1], name)));
  });
}

template <typename Op>
void comparison(Frame& frame, const std::string& name, Op op) {
  define(frame, name, 2, [name, op](Interpreter&, std::span<const ThunkPtr> a) {
    return make_bool(op(int_arg(a[0], name), int_arg(a[1], name)));
  });
}

void check_divisor(const Integer& d, const std::string& fn) {
  if (d == 0) throw Error(ErrorKind::DivisionByZero, fn + " by zero");
}

ValuePtr take(Integer n, ThunkPtr xs) {
  if (n <= 0) return make_empty();
  const CollVal& c = coll_arg(xs, "take");
  if (c.empty()) return make_empty();
  ThunkPtr tail = c.tail;
  return make_cell(c.head, lazy([n = Integer(n - 1), tail] { return take(n, tail); }));
}

ValuePtr map(Interpreter& interp, ValuePtr fn, ThunkPtr xs) {
  const CollVal& c = coll_arg(xs, "map");
  if (c.empty()) return make_empty();
  ThunkPtr head = c.head, tail = c.tail;
  return make_cell(lazy([&interp, fn, head] { return interp.apply(fn, {head}); }),
                   lazy([&interp, fn, tail] { return map(interp, fn, tail); }));
}

ValuePtr append(ThunkPtr xs, ThunkPtr ys) {
  const CollVal& c = coll_arg(xs, "append");
  if (c.empty()) return ys->force();
  ThunkPtr tail = c.tail;
  return make_cell(c.head, lazy([tail, ys] { return append(tail, ys); }));
}

bool is_function(const Value& v) { return v.as<Closure>() || v.as<Builtin>(); }

ValuePtr nats_from(Integer n) {
  return make_cell(ready(make_int(n)), lazy([n] { return nats_from(n + 1); }));
}

struct PrimeTable {
  std::vector<Integer> found{2, 3};

  const Integer& at(std::size_t k) {
    while (found.size() <= k) {
      Integer candidate = found.back() + 2;
      for (;; candidate += 2) {
        bool prime = true;
        for (const Integer& p : found) {
          if (p * p > candidate) break;
          if (candidate % p == 0) {
            prime = false;
            break;
          }
        }
        if (prime) break;
      }
      found.push_back(candidate);
    }
    return found[k];
  }
};

ValuePtr primes_from(std::shared_ptr<PrimeTable> table, std::size_t k) {
  ThunkPtr head = ready(make_int(table->at(k)));
  return make_cell(std::move(head), lazy([table, k] { return primes_from(table, k + 1); }));
}

void bind_matcher(Frame& frame, const std::string& name, MatcherPtr m) { frame.bind(name, ready(make_matcher(std::move(m)))); }

}  // namespace

void install_builtins(Frame& frame) {
  arithmetic(frame, "+", [](const Integer& a, const Integer& b) -> Integer { return a + b; });
  arithmetic(frame, "-", [](const Integer& a, const Integer& b) -> Integer { return a - b; });
  arithmetic(frame, "*", [](const Integer& a, const Integer& b) -> Integer { return a * b; });
  define(frame, "quotient", 2, [](Interpreter&, std::span<const ThunkPtr> a) {
    const Integer& d = int_arg(a[1], "quotient");
    check_divisor(d, "quotient");
    return make_int(int_arg(a[0], "quotient") / d);
  });
  define(frame, "remainder", 2, [](Interpreter&, std::span<const ThunkPtr> a) {
    const Integer& d = int_arg(a[1], "remainder");
    check_divisor(d, "remainder");
    return make_int(int_arg(a[0], "remainder") % d);
  });
  define(frame, "modulo", 2, [](Interpreter&, std::span<const ThunkPtr> a) {
    const Integer& d = int_arg(a[1], "modulo");
    check_divisor(d, "modulo");
    Integer r = int_arg(a[0], "modulo") % d;
    if (r != 0 && ((r < 0) != (d < 0))) r += d;
    return make_int(std::move(r));
  });

  comparison(frame, "<", [](const Integer& a, const Integer& b) { return a < b; });
  comparison(frame, "<=", [](const Integer& a, const Integer& b) { return a <= b; });
  comparison(frame, ">", [](const Integer& a, const Integer& b) { return a > b; });
  comparison(frame, ">=", [](const Integer& a, const Integer& b) { return a >= b; });
  define(frame, "=", 2, [](Interpreter&, std::span<const ThunkPtr> a) {
    return make_bool(structural_equal(a[0], a[1]));
  });
  define(frame, "not", 1, [](Interpreter&, std::span<const ThunkPtr> a) {
    return make_bool(!bool_arg(a[0], "not"));
  });
  define(frame, "if", 3, [](Interpreter&, std::span<const ThunkPtr> a) {
    return bool_arg(a[0], "if") ? a[1]->force() : a[2]->force();
  });

  define(frame, "take", 2, [](Interpreter&, std::span<const ThunkPtr> a) {
    const Integer& n = int_arg(a[0], "take");
    if (n < 0) throw Error(ErrorKind::NegativeCount, "take " + n.str());
    return take(n, a[1]);
  });
  // Accepts (map fn xs) and (map xs fn).
  define(frame, "map", 2, [](Interpreter& interp, std::span<const ThunkPtr> a) {
    const ValuePtr& first = a[0]->force();
    if (is_function(*first)) return map(interp, first, a[1]);
    return map(interp, a[1]->force(), a[0]);
  });
  define(frame, "append", 2, [](Interpreter&, std::span<const ThunkPtr> a) { return append(a[0], a[1]); });
  define(frame, "length", 1, [](Interpreter&, std::span<const ThunkPtr> a) {
    Integer n = 0;
    ThunkPtr t = a[0];
    for (;;) {
      const CollVal& c = coll_arg(t, "length");
      if (c.empty()) break;
      ++n;
      t = c.tail;
    }
    return make_int(std::move(n));
  });

  frame.bind("nats", lazy([] { return nats_from(1); }));
  frame.bind("primes", lazy([] { return primes_from(std::make_shared<PrimeTable>(), 0); }));

  bind_matcher(frame, "something", something_matcher());
  bind_matcher(frame, "integer", integer_matcher());
  bind_matcher(frame, "eq", eq_matcher());
  define(frame, "list", 1, [](Interpreter&, std::span<const ThunkPtr> a) { return make_matcher(list_of(matcher_arg(a[0]))); });
  define(frame, "multiset", 1, [](Interpreter&, std::span<const ThunkPtr> a) {
    return make_matcher(multiset_of(matcher_arg(a[0])));
  });
  define(frame, "set", 1, [](Interpreter&, std::span<const ThunkPtr> a) { return make_matcher(set_of(matcher_arg(a[0]))); });
}

std::string_view library_source() {
  return R"nfm(
(define $map (lambda [$xs $fn] (match-all xs (list something)
  [<join _ <cons $x _>> (fn x)])))

(define $member? (lambda [$x $xs] (match xs (multiset eq)
  {[<cons ,x _> <True>] [_ <False>]})))

(define $delete (lambda [$x $xs] (match xs (list eq)
  {[<join $hs <cons ,x $ts>> (append hs ts)] [_ xs]})))

(define $take (lambda [$n $xs] (match xs (list something)
  {[(loop $i [1 n] <cons $a_i ...> _)
    (map (lambda [$i] a_i) (take n nats))]})))
)nfm";
}

Env stdlib_defs(Interpreter& interp, const Env& builtins) {
  auto library = std::make_shared<Frame>(builtins);
  for (const TopForm& form : parse_program(library_source())) {
    const auto& def = std::get<Define>(form);
    library->bind(def.name, interp.delay(def.value, builtins));
  }
  return library;
}

Env export_library(const Env& library, const Env& builtins) {
  auto exported = std::make_shared<Frame>(builtins);
  for (const char* name : {"member?", "delete"}) exported->bind(name, library->lookup_local(name));
  return exported;
}

}  // namespace nfm
