#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"
#include "nfm/scheduler.hpp"

using nfm::FairScheduler;
using nfm::NodeSource;
using nfm::NodeStream;

namespace {

struct Tree {
  std::string name;
  std::vector<Tree> children;  // empty: a leaf
};

class Children final : public NodeSource<const Tree*> {
 public:
  explicit Children(const Tree& t) : t_(t) {}
  std::optional<const Tree*> next() override {
    if (i_ == t_.children.size()) return std::nullopt;
    return &t_.children[i_++];
  }

 private:
  const Tree& t_;
  std::size_t i_ = 0;
};

using Scheduler = FairScheduler<const Tree*, std::string>;

Scheduler::Outcome visit(const Tree* t) {
  if (t->children.empty()) return t->name;
  return NodeStream<const Tree*>(std::make_unique<Children>(*t));
}

std::vector<std::string> schedule(const Tree& root) {
  Scheduler s(&root, visit);
  std::vector<std::string> out;
  while (auto r = s.next()) out.push_back(*r);
  return out;
}

// Sweep of a node: the root's is 0; the child at position k of a node with
// sweep s is pulled at sweep s + 1 + k. Leaves come out by sweep; within one
// sweep, in the order their parents were pulled, recursively.
void keys(const Tree& t, std::vector<int> key, std::vector<std::pair<std::vector<int>, std::string>>& out) {
  if (t.children.empty()) {
    out.emplace_back(key, t.name);
    return;
  }
  for (std::size_t k = 0; k < t.children.size(); ++k) {
    std::vector<int> child{key.front() + 1 + static_cast<int>(k)};
    child.insert(child.end(), key.begin(), key.end());
    keys(t.children[k], child, out);
  }
}

std::vector<std::string> oracle(const Tree& root) {
  if (root.children.empty()) return {root.name};
  std::vector<std::pair<std::vector<int>, std::string>> leaves;
  keys(root, {0}, leaves);
  std::sort(leaves.begin(), leaves.end());
  std::vector<std::string> out;
  for (auto& [k, name] : leaves) out.push_back(name);
  return out;
}

Tree leaf(std::string n) { return Tree{std::move(n), {}}; }

Tree random_tree(std::mt19937& rng, int depth, std::string name) {
  std::uniform_int_distribution<int> width(0, 4);
  int n = depth == 0 ? 0 : width(rng);
  Tree t{name, {}};
  for (int i = 0; i < n; ++i) t.children.push_back(random_tree(rng, depth - 1, name + "." + std::to_string(i)));
  return t;
}

}  // namespace

TEST_CASE("a single leaf yields one result") {
  CHECK(schedule(leaf("only")) == std::vector<std::string>{"only"});
}

TEST_CASE("hand-built three-level tree") {
  Tree t{"r",
         {Tree{"a", {leaf("a1"), leaf("a2"), leaf("a3")}},
          Tree{"b", {leaf("b1")}},
          Tree{"c", {Tree{"c1", {leaf("c11"), leaf("c12")}}, leaf("c2")}}}};
  CHECK(schedule(t) == oracle(t));
  // Diagonal rather than level order: b1 overtakes a3.
  Tree small{"r", {Tree{"a", {leaf("a1"), leaf("a2"), leaf("a3")}}, Tree{"b", {leaf("b1")}}}};
  CHECK(schedule(small) == std::vector<std::string>{"a1", "a2", "b1", "a3"});
}

TEST_CASE("random trees follow the sweep order") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Tree t = random_tree(rng, 4, "t");
    CHECK(schedule(t) == oracle(t));
  }
}

namespace {

// Infinite binary-ish tree: node (m, n) at depth 2 is a leaf.
struct Pair {
  int depth;
  int m;
};

class Naturals final : public NodeSource<Pair> {
 public:
  Naturals(int depth, int m) : depth_(depth), m_(m) {}
  std::optional<Pair> next() override { return Pair{depth_, depth_ == 1 ? n_++ : m_ * 1000 + n_++}; }

 private:
  int depth_, m_, n_ = 1;
};

}  // namespace

TEST_CASE("infinite branching stays fair") {
  using S = FairScheduler<Pair, int>;
  S s(Pair{0, 0}, [](Pair p) -> S::Outcome {
    if (p.depth == 2) return p.m;
    return NodeStream<Pair>(std::make_unique<Naturals>(p.depth + 1, p.m));
  });
  std::vector<int> first;
  for (int i = 0; i < 8; ++i) first.push_back(*s.next());
  CHECK(first == std::vector<int>{1001, 1002, 2001, 1003, 2002, 3001, 1004, 2003});
}
