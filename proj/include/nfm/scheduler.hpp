#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace nfm {

template <typename Node>
class NodeSource {
 public:
  virtual ~NodeSource() = default;
  virtual std::optional<Node> next() = 0;
};

template <typename Node>
using NodeStream = std::unique_ptr<NodeSource<Node>>;

/// Round-robin breadth-first enumeration of a search tree whose children
/// come in lazy, possibly infinite streams.
///
/// The working list holds child streams. Each sweep visits the entries
/// present when the sweep began, in order, and pulls at most one node from
/// each: a leaf is emitted at once, an inner node is expanded and its child
/// stream is appended behind every entry of the current sweep. Exhausted
/// streams drop out. A node at position k of its parent's stream is pulled
/// k + 1 sweeps after its parent, so every leaf reachable through finite
/// positions is emitted after finitely many sweeps.
template <typename Node, typename Result>
class FairScheduler {
 public:
  using Outcome = std::variant<Result, NodeStream<Node>>;
  using Visit = std::function<Outcome(Node)>;

  FairScheduler(Node root, Visit visit) : visit_(std::move(visit)) {
    Outcome outcome = visit_(std::move(root));
    if (auto* leaf = std::get_if<Result>(&outcome)) {
      pending_root_ = std::move(*leaf);
    } else {
      current_.push_back(std::move(std::get<NodeStream<Node>>(outcome)));
    }
  }

  std::optional<Result> next() {
    if (pending_root_) {
      std::optional<Result> out = std::move(pending_root_);
      pending_root_.reset();
      return out;
    }
    for (;;) {
      if (pos_ == current_.size()) {
        current_ = std::move(survivors_);
        survivors_.clear();
        for (auto& child : appended_) current_.push_back(std::move(child));
        appended_.clear();
        pos_ = 0;
        if (current_.empty()) return std::nullopt;
        ++sweeps_;
      }
      NodeStream<Node>& entry = current_[pos_++];
      std::optional<Node> node = entry->next();
      if (!node) continue;
      survivors_.push_back(std::move(entry));
      ++expanded_;
      Outcome outcome = visit_(std::move(*node));
      if (auto* leaf = std::get_if<Result>(&outcome)) return std::move(*leaf);
      appended_.push_back(std::move(std::get<NodeStream<Node>>(outcome)));
    }
  }

  std::uint64_t sweeps() const { return sweeps_; }
  std::uint64_t nodes_visited() const { return expanded_; }

 private:
  Visit visit_;
  std::optional<Result> pending_root_;
  std::vector<NodeStream<Node>> current_;
  std::vector<NodeStream<Node>> survivors_;
  std::vector<NodeStream<Node>> appended_;
  std::size_t pos_ = 0;
  std::uint64_t sweeps_ = 0;
  std::uint64_t expanded_ = 0;
};

}  // namespace nfm
