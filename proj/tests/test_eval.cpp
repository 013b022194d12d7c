#include "doctest.h"
#include "nfm/error.hpp"
#include "nfm/interpreter.hpp"
#include "nfm/matcher.hpp"
#include "support.hpp"

using namespace nfm;
using testing::error_of;
using testing::run;

TEST_CASE("thunks are forced once") {
  int evaluations = 0;
  ThunkPtr t = lazy([&] {
    ++evaluations;
    return make_int(3);
  });
  CHECK_FALSE(t->forced());
  const ValuePtr& a = t->force();
  const ValuePtr& b = t->force();
  CHECK(a.get() == b.get());
  CHECK(evaluations == 1);
  CHECK(t->forced());
  CHECK(ready(make_int(5))->force()->as<IntVal>()->value == 5);
}

TEST_CASE("forcing a thunk from inside itself is a black hole") {
  auto self = std::make_shared<ThunkPtr>();
  *self = lazy([self] { return (*self)->force(); });
  CHECK(error_of([&] { (*self)->force(); }) == ErrorKind::BlackHole);
  CHECK(run("(define $x x) x") == "Error: BlackHole: value depends on itself");
}

TEST_CASE("a failed thunk can be retried") {
  int attempts = 0;
  ThunkPtr t = lazy([&]() -> ValuePtr {
    if (++attempts == 1) throw Error(ErrorKind::TypeError, "first");
    return make_int(1);
  });
  CHECK(error_of([&] { t->force(); }) == ErrorKind::TypeError);
  CHECK(t->force()->as<IntVal>()->value == 1);
}

TEST_CASE("shared bindings are evaluated once") {
  Interpreter interp;
  run(interp, "(define $x (+ 1 2))");
  counters() = {};
  run(interp, "[x x x]");
  CHECK(counters().thunks_forced == 1 + 3);  // x itself plus the three tuple slots
}

TEST_CASE("arguments are passed unevaluated") {
  CHECK(run("((lambda [$x] 1) (undefined))") == "1");
  CHECK(run("((lambda [$x] 1) (1 2))") == "1");
  CHECK(run("(define $f (lambda [$n] (f n))) 1") == "1");
  CHECK(run("(take 2 {1 2 (undefined)})") == "{1 2}");
  CHECK(run("<Pair 1 2>") == "<Pair 1 2>");
}

TEST_CASE("definitions") {
  CHECK(run("(define $x 2) x") == "2");
  CHECK(run("(define $x 2) (define $x 3) x") == "3");
  CHECK(run("(define $ones {1 1}) (define $f (lambda [$n] (match n integer {[,0 0] [_ (+ 1 (f (- n 1)))]}))) (f 5)") ==
        "5");
}

TEST_CASE("evaluation errors") {
  CHECK(run("(undefined)") == "Error: UnboundVariable: undefined");
  CHECK(run("(1 2)") == "Error: NotAFunction: integer cannot be applied");
  CHECK(run("((lambda [$x] x))") == "Error: ArityMismatch: function of 1 parameter(s) applied to 0");
  CHECK(run("(+ 1 {})") == "Error: TypeError: + expects an integer, got collection");
  CHECK(run("(quotient 1 0)") == "Error: DivisionByZero: quotient by zero");
  CHECK(run("a_1") == "Error: UnboundVariable: a_1");
}

TEST_CASE("arithmetic") {
  CHECK(run("(+ 2 3)") == "5");
  CHECK(run("(- 2 3)") == "-1");
  CHECK(run("(* 123456789012 123456789012)") == "15241578753153483936144");
  CHECK(run("(quotient -7 2)") == "-3");
  CHECK(run("(remainder -7 2)") == "-1");
  CHECK(run("(modulo -7 2)") == "1");
  CHECK(run("(modulo 7 -2)") == "-1");
  CHECK(run("[(< 1 2) (<= 2 2) (> 1 2) (>= 1 2)]") == "[<True> <True> <False> <False>]");
  CHECK(run("(= {1 [2 <A>]} {1 [2 <A>]})") == "<True>");
  CHECK(run("(if (not (= 1 2)) 10 (undefined))") == "10");
}

TEST_CASE("rendering") {
  CHECK(run("{}") == "{}");
  CHECK(run("{1 {2 3} [4 <Five 5>]}") == "{1 {2 3} [4 <Five 5>]}");
  CHECK(run("(lambda [$x] x)") == "#<lambda>");
  CHECK(run("(multiset integer)") == "#<matcher (multiset integer)>");

  Interpreter limited(Options{3, true});
  CHECK(run(limited, "nats") == "{1 2 3 ...}");
  CHECK(run(limited, "{1 2 3}") == "{1 2 3}");
  Interpreter zero(Options{0, true});
  CHECK(run(zero, "(take 120 nats)").size() > 300);
}

TEST_CASE("printed values read back as equal values") {
  const char* values[] = {"{1 {2 3} [4 <Five 5>]}", "[{} <A> -3]", "<True>", "{[1 {2 3}] [2 {1 3}]}"};
  for (const char* v : values) {
    std::string printed = run(v);
    CHECK(printed == v);
    CHECK(run(std::string("(= ") + v + " " + printed + ")") == "<True>");
  }
}

TEST_CASE("indexed variables resolve their evaluated index") {
  CHECK(run("(match-all {7 8} (list integer) [<cons $a_1 <cons $a_2 _>> [a_(+ 0 1) a_2]])") == "{[7 8]}");
  CHECK(run("(match-all {7 8} (list integer) [<cons $a_1 <cons $a_2 _>> a_3])") ==
        "Error: UnboundVariable: a_3");
}

TEST_CASE("matchers are values") {
  CHECK(run("(define $m (list integer)) (match-all {1 2} m [<cons $x _> x])") == "{1}");
  CHECK(run("(match-all [1 {2 1}] [integer (multiset integer)] [,[1 {1 2}] <Same>])") == "{<Same>}");
  CHECK(run("(match-all [1 {2 1}] [integer (list integer)] [,[1 {1 2}] <Same>])") == "{}");
  CHECK(run("(match-all 1 5 [$x x])") == "Error: TypeError: expected a matcher, got integer");
}
