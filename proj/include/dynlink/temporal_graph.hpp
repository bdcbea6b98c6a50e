#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dynlink {

/// Dense index into the union node set; 0 <= id < node_count.
using NodeId = std::uint32_t;

/// Snapshot position in a TemporalNetwork (0-based).
using TimeIndex = std::size_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

/// One directed graph in the sequence. Edges are kept sorted and unique,
/// self-loops are never stored.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(TimeIndex time, EdgeList edges);

  TimeIndex time() const noexcept { return time_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  bool contains(NodeId src, NodeId dst) const noexcept;
  bool contains(Edge e) const noexcept { return contains(e.src, e.dst); }

  friend bool operator==(const Snapshot&, const Snapshot&) = default;

 private:
  TimeIndex time_ = 0;
  EdgeList edges_;
};

struct TransitionPair {
  TimeIndex time = 0;  // transition from time-1 to time
  EdgeList formed;
  EdgeList dissolved;
};

/// Ordered snapshot sequence over a fixed node set. Immutable once built.
class TemporalNetwork {
 public:
  TemporalNetwork() = default;

  /// Labels are optional; when empty, node and time labels default to the
  /// decimal index.
  TemporalNetwork(std::size_t node_count, std::vector<EdgeList> snapshots,
                  std::vector<std::string> node_labels = {},
                  std::vector<std::string> time_labels = {});

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t snapshot_count() const noexcept { return snapshots_.size(); }
  const Snapshot& snapshot(TimeIndex t) const;
  std::span<const Snapshot> snapshots() const noexcept { return snapshots_; }
  const std::string& node_label(NodeId id) const { return node_labels_.at(id); }
  const std::string& time_label(TimeIndex t) const { return time_labels_.at(t); }
  std::span<const std::string> node_labels() const noexcept { return node_labels_; }
  std::span<const std::string> time_labels() const noexcept { return time_labels_; }

  /// Copy holding snapshots [0, count). The node set is kept whole.
  TemporalNetwork truncated(std::size_t count) const;

  friend bool operator==(const TemporalNetwork&, const TemporalNetwork&) = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<Snapshot> snapshots_;
  std::vector<std::string> node_labels_;
  std::vector<std::string> time_labels_;
};

struct EdgeRow {
  std::string source;
  std::string target;
  std::string time;
};

struct IngestOptions {
  /// Add (j,i) for every (i,j); for datasets that are undirected at source.
  bool symmetrize = false;
};

TemporalNetwork ingest_edge_list(std::span<const EdgeRow> rows,
                                 const IngestOptions& options = {});

/// Parses `source,target,time` lines; `#` comments and blank lines are
/// skipped. Throws ParseError naming the 1-based line number.
std::vector<EdgeRow> parse_edge_list(std::istream& in);

TemporalNetwork read_edge_list(std::istream& in, const IngestOptions& options = {});
TemporalNetwork load_edge_list(const std::string& path, const IngestOptions& options = {});

/// Writes rows sorted by (time, source, target).
void write_edge_list(std::ostream& out, const TemporalNetwork& net);
void save_edge_list(const std::string& path, const TemporalNetwork& net);

TransitionPair derive_transition(const TemporalNetwork& net, TimeIndex t);

/// Transitions at t, t-1, ..., t-p+1, newest first. Requires 1 <= p <= t.
std::vector<TransitionPair> window_transitions(const TemporalNetwork& net, TimeIndex t,
                                               std::size_t p);

/// Union of snapshots 0..up_to inclusive.
Snapshot union_graph(const TemporalNetwork& net, TimeIndex up_to);

// Sorted-set helpers over EdgeList.
EdgeList edge_difference(std::span<const Edge> a, std::span<const Edge> b);
EdgeList edge_union(std::span<const Edge> a, std::span<const Edge> b);

}  // namespace dynlink
