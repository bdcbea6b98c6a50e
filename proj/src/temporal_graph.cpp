#include "dynlink/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "dynlink/error.hpp"

namespace dynlink {

namespace {

void normalize(EdgeList& edges) {
  std::erase_if(edges, [](const Edge& e) { return e.src == e.dst; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool is_unsigned_integer(const std::string& s) {
  if (s.empty() || s.size() > 19) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

/// Labels are ordered numerically when every label is an unsigned integer,
/// lexicographically otherwise. The order fixes the dense index.
std::vector<std::string> ordered_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (std::all_of(labels.begin(), labels.end(), is_unsigned_integer)) {
    std::stable_sort(labels.begin(), labels.end(),
                     [](const std::string& a, const std::string& b) {
                       std::uint64_t x = 0, y = 0;
                       std::from_chars(a.data(), a.data() + a.size(), x);
                       std::from_chars(b.data(), b.data() + b.size(), y);
                       return x < y;
                     });
  }
  return labels;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Snapshot::Snapshot(TimeIndex time, EdgeList edges) : time_(time), edges_(std::move(edges)) {
  normalize(edges_);
}

bool Snapshot::contains(NodeId src, NodeId dst) const noexcept {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{src, dst});
}

TemporalNetwork::TemporalNetwork(std::size_t node_count, std::vector<EdgeList> snapshots,
                                 std::vector<std::string> node_labels,
                                 std::vector<std::string> time_labels)
    : node_count_(node_count),
      node_labels_(std::move(node_labels)),
      time_labels_(std::move(time_labels)) {
  snapshots_.reserve(snapshots.size());
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    for (const Edge& e : snapshots[t]) {
      if (e.src >= node_count || e.dst >= node_count) {
        throw ContractViolation("edge endpoint outside node set at snapshot " +
                                std::to_string(t));
      }
    }
    snapshots_.emplace_back(t, std::move(snapshots[t]));
  }
  if (node_labels_.empty()) {
    node_labels_.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) node_labels_.push_back(std::to_string(i));
  }
  if (time_labels_.empty()) {
    time_labels_.reserve(snapshots_.size());
    for (std::size_t t = 0; t < snapshots_.size(); ++t) time_labels_.push_back(std::to_string(t));
  }
  DYNLINK_REQUIRE(node_labels_.size() == node_count, "node label count mismatch");
  DYNLINK_REQUIRE(time_labels_.size() == snapshots_.size(), "time label count mismatch");
}

const Snapshot& TemporalNetwork::snapshot(TimeIndex t) const {
  if (t >= snapshots_.size()) {
    throw IndexError("snapshot " + std::to_string(t) + " out of range (have " +
                     std::to_string(snapshots_.size()) + ")");
  }
  return snapshots_[t];
}

TemporalNetwork TemporalNetwork::truncated(std::size_t count) const {
  if (count == 0 || count > snapshots_.size()) {
    throw IndexError("cannot truncate to " + std::to_string(count) + " snapshots");
  }
  std::vector<EdgeList> kept;
  kept.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const auto e = snapshots_[t].edges();
    kept.emplace_back(e.begin(), e.end());
  }
  return TemporalNetwork(node_count_, std::move(kept), node_labels_,
                         std::vector<std::string>(time_labels_.begin(),
                                                  time_labels_.begin() + count));
}

TemporalNetwork ingest_edge_list(std::span<const EdgeRow> rows, const IngestOptions& options) {
  std::vector<std::string> nodes;
  std::vector<std::string> times;
  for (const EdgeRow& r : rows) {
    if (r.source == r.target) continue;
    nodes.push_back(r.source);
    nodes.push_back(r.target);
    times.push_back(r.time);
  }
  if (times.empty()) throw EmptyInputError("edge list contains no valid edges");

  nodes = ordered_labels(std::move(nodes));
  times = ordered_labels(std::move(times));
  std::unordered_map<std::string, NodeId> node_index;
  for (std::size_t i = 0; i < nodes.size(); ++i) node_index.emplace(nodes[i], static_cast<NodeId>(i));
  std::unordered_map<std::string, std::size_t> time_index;
  for (std::size_t t = 0; t < times.size(); ++t) time_index.emplace(times[t], t);

  std::vector<EdgeList> snapshots(times.size());
  for (const EdgeRow& r : rows) {
    if (r.source == r.target) continue;
    const NodeId s = node_index.at(r.source);
    const NodeId d = node_index.at(r.target);
    auto& edges = snapshots[time_index.at(r.time)];
    edges.push_back({s, d});
    if (options.symmetrize) edges.push_back({d, s});
  }
  const std::size_t n = nodes.size();
  return TemporalNetwork(n, std::move(snapshots), std::move(nodes), std::move(times));
}

std::vector<EdgeRow> parse_edge_list(std::istream& in) {
  std::vector<EdgeRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = body.find(',', start);
      fields.push_back(trim(std::string_view(body).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 comma-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      if (f.empty()) throw ParseError(line_no, "empty field");
    }
    rows.push_back({std::move(fields[0]), std::move(fields[1]), std::move(fields[2])});
  }
  return rows;
}

TemporalNetwork read_edge_list(std::istream& in, const IngestOptions& options) {
  const auto rows = parse_edge_list(in);
  return ingest_edge_list(rows, options);
}

TemporalNetwork load_edge_list(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const TemporalNetwork& net) {
  for (const Snapshot& s : net.snapshots()) {
    const std::string& time = net.time_label(s.time());
    for (const Edge& e : s.edges()) {
      out << net.node_label(e.src) << ',' << net.node_label(e.dst) << ',' << time << '\n';
    }
  }
}

void save_edge_list(const std::string& path, const TemporalNetwork& net) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_edge_list(out, net);
  if (!out) throw IoError("write failed for " + path);
}

EdgeList edge_difference(std::span<const Edge> a, std::span<const Edge> b) {
  EdgeList out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeList edge_union(std::span<const Edge> a, std::span<const Edge> b) {
  EdgeList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

TransitionPair derive_transition(const TemporalNetwork& net, TimeIndex t) {
  if (t == 0 || t >= net.snapshot_count()) {
    throw IndexError("transition " + std::to_string(t) + " needs snapshots " +
                     std::to_string(t) + " and its predecessor");
  }
  const auto prev = net.snapshot(t - 1).edges();
  const auto cur = net.snapshot(t).edges();
  return TransitionPair{t, edge_difference(cur, prev), edge_difference(prev, cur)};
}

std::vector<TransitionPair> window_transitions(const TemporalNetwork& net, TimeIndex t,
                                               std::size_t p) {
  if (t >= net.snapshot_count()) throw IndexError("origin " + std::to_string(t) + " out of range");
  if (p < 1 || p > t) {
    throw IndexError("window length " + std::to_string(p) + " outside [1, " +
                     std::to_string(t) + "]");
  }
  std::vector<TransitionPair> out;
  out.reserve(p);
  for (std::size_t k = 0; k < p; ++k) out.push_back(derive_transition(net, t - k));
  return out;
}

Snapshot union_graph(const TemporalNetwork& net, TimeIndex up_to) {
  if (up_to >= net.snapshot_count()) {
    throw IndexError("union bound " + std::to_string(up_to) + " out of range");
  }
  EdgeList acc;
  for (TimeIndex t = 0; t <= up_to; ++t) acc = edge_union(acc, net.snapshot(t).edges());
  return Snapshot(up_to, std::move(acc));
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse: return "parse error";
    case ErrorCode::empty_input: return "empty input";
    case ErrorCode::index: return "index out of range";
    case ErrorCode::contract: return "contract violation";
    case ErrorCode::degenerate_task: return "degenerate task";
    case ErrorCode::diverged: return "training diverged";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::config: return "configuration error";
  }
  return "unknown error";
}

}  // namespace dynlink
