#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "dynlink/temporal_graph.hpp"

namespace dynlink {

struct WalkConfig {
  std::size_t walks_per_node = 5;
  std::size_t walk_length = 40;
  std::size_t window = 5;
  /// Follow out-edges only. Default walks use the undirected view.
  bool directed = false;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Which loss term a sample feeds.
enum class Term : std::uint8_t {
  formation_supervised = 0,
  dissolution_supervised = 1,
  formation_context = 2,
  dissolution_context = 3,
};

inline constexpr std::size_t kTermCount = 4;

inline bool is_context(Term t) noexcept {
  return t == Term::formation_context || t == Term::dissolution_context;
}
inline bool is_formation(Term t) noexcept {
  return t == Term::formation_supervised || t == Term::formation_context;
}

enum class TransitionKind { formation, dissolution };

struct TrainingSample {
  NodeId i = 0;
  NodeId j = 0;
  std::int8_t gamma = 1;  // +1 positive, -1 negative
  Term term = Term::formation_supervised;

  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

/// Compressed adjacency lists (sorted, unique neighbours).
class Adjacency {
 public:
  Adjacency() = default;
  Adjacency(const Snapshot& graph, std::size_t node_count, bool directed);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Membership test for ordered pairs. Dense bitmap for small node sets,
/// hash set otherwise.
class PairSet {
 public:
  PairSet(std::size_t node_count, std::span<const Edge> pairs);

  bool contains(NodeId i, NodeId j) const noexcept;
  bool dense() const noexcept { return dense_; }

 private:
  std::size_t n_;
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> sparse_;
};

/// (node, context) pairs from truncated uniform random walks over the
/// current network. Walks start at every node with at least one neighbour;
/// pairs within `window` positions are emitted in both directions, pairs of
/// a node with itself are dropped.
std::vector<Edge> deep_walk_contexts(const Snapshot& current, std::size_t node_count,
                                     const WalkConfig& cfg);

/// Concatenated formed (or dissolved) edge sets of a window; a pair present
/// at several times appears once per time.
std::vector<Edge> positive_transition_pairs(std::span<const TransitionPair> transitions,
                                            TransitionKind kind);

inline constexpr int kMaxNegativeAttempts = 100;

/// k corrupted pairs (i, j') per positive with j' uniform over V \ {i}.
/// A draw hitting `exclude` is redrawn, up to kMaxNegativeAttempts times;
/// after that the negative is skipped.
std::vector<TrainingSample> negative_samples(std::span<const Edge> positives,
                                             const PairSet& exclude, std::size_t num_nodes,
                                             std::size_t k, std::uint64_t seed, Term term);

/// Same, excluding the positives themselves.
std::vector<TrainingSample> negative_samples(std::span<const Edge> positives,
                                             std::size_t num_nodes, std::size_t k,
                                             std::uint64_t seed, Term term);

}  // namespace dynlink
