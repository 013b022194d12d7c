#include "doctest.h"
#include "nfm/interpreter.hpp"
#include "nfm/value.hpp"
#include "support.hpp"

using namespace nfm;
using testing::braces;
using testing::run;

namespace {

std::vector<int> sieve(int limit) {
  std::vector<bool> composite(limit + 1);
  std::vector<int> out;
  for (int i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long j = long(i) * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// An interpreter where the library's own definitions are reachable under a
// `lib-` prefix.
struct LibraryInterp {
  Interpreter interp;
  LibraryInterp() {
    for (const char* name : {"map", "member?", "delete", "take"}) {
      interp.global()->bind(std::string("lib-") + name, interp.library()->lookup_local(name));
    }
  }
  std::string operator()(const std::string& program) { return run(interp, program); }
};

}  // namespace

TEST_CASE("take") {
  CHECK(run("(take 0 nats)") == "{}");
  CHECK(run("(take 3 {1 2})") == "{1 2}");
  CHECK(run("(take 5 nats)") == "{1 2 3 4 5}");
  CHECK(run("(take -1 nats)") == "Error: NegativeCount: take -1");
  CHECK(run("(take 2 {1 2 (undefined)})") == "{1 2}");
}

TEST_CASE("take forces only the cells it returns") {
  Interpreter interp;
  run(interp, "(define $xs (map (lambda [$x] x) nats))");
  counters() = {};
  CHECK(run(interp, "(take 5 xs)") == "{1 2 3 4 5}");
  auto first = counters().cells_forced;
  counters() = {};
  CHECK(run(interp, "(take 5 (map (lambda [$x] x) nats))") == "{1 2 3 4 5}");
  CHECK(first >= 5);
  CHECK(counters().cells_forced <= 3 * 5 + 3);
}

TEST_CASE("map, append and length") {
  CHECK(run("(map (lambda [$x] (+ x 1)) {1 2 3})") == "{2 3 4}");
  CHECK(run("(map {1 2 3} (lambda [$x] (+ x 1)))") == "{2 3 4}");
  CHECK(run("(take 3 (map (lambda [$x] (* x x)) nats))") == "{1 4 9}");
  CHECK(run("(append {1 2} {3})") == "{1 2 3}");
  CHECK(run("(take 4 (append {0} nats))") == "{0 1 2 3}");
  CHECK(run("(length {1 2 3})") == "3");
}

TEST_CASE("primes") {
  CHECK(run("(take 5 primes)") == "{2 3 5 7 11}");
  auto reference = sieve(8000);
  REQUIRE(reference.size() >= 1000);
  Interpreter interp(Options{0, true});
  std::vector<int> first(reference.begin(), reference.begin() + 1000);
  CHECK(run(interp, "(take 1000 primes)") == braces(first));
}

TEST_CASE("library sessions") {
  CHECK(run("(member? 2 {1 2 3})") == "<True>");
  CHECK(run("(member? 5 {1 2 3})") == "<False>");
  CHECK(run("(delete 2 {1 2 3 2})") == "{1 3 2}");
  CHECK(run("(delete 4 {1 2 3})") == "{1 2 3}");
  // eq compares structurally, so element order matters
  CHECK(run("(member? {1 2} {{1 2} {3}})") == "<True>");
  CHECK(run("(member? {2 1} {{1 2} {3}})") == "<False>");
  LibraryInterp lib;
  CHECK(lib("(lib-map {1 2 3} (lambda [$x] (+ x 1)))") == "{2 3 4}");
  CHECK(lib("(lib-take 2 {1 2 3})") == "{1 2}");
  CHECK(lib("(lib-take 0 {})") == "{}");
}

TEST_CASE("library functions agree with the primitives") {
  LibraryInterp lib;
  for (const auto& xs : testing::sequences({1, 2, 3}, 4)) {
    std::string t = braces(xs);
    CHECK(lib("(lib-map " + t + " (lambda [$x] (* 2 x)))") == lib("(map (lambda [$x] (* 2 x)) " + t + ")"));
    for (std::size_t n = 0; n <= xs.size(); ++n) {
      CHECK(lib("(lib-take " + std::to_string(n) + " " + t + ")") == lib("(take " + std::to_string(n) + " " + t + ")"));
    }
  }
  // beyond the length of the list no loop expansion fits
  CHECK(lib("(lib-take 3 {1 2})") == "Error: NoMatch: no clause of the match at 11:32 matched");
}

TEST_CASE("without the library") {
  Interpreter bare(Options{100, false});
  CHECK(run(bare, "(member? 1 {1})") == "Error: UnboundVariable: member?");
  CHECK(run(bare, "(take 2 nats)") == "{1 2}");
  CHECK_FALSE(bare.library());
}
