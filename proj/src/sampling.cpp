#include "dynlink/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "dynlink/error.hpp"
#include "dynlink/rng.hpp"

namespace dynlink {

namespace {
// Bitmap up to 8192^2 bits = 8 MiB.
constexpr std::size_t kDensePairLimit = 8192;
}  // namespace

void WalkConfig::validate() const {
  if (walks_per_node < 1) throw ConfigError("walks_per_node must be >= 1");
  if (walk_length < 2) throw ConfigError("walk_length must be >= 2");
  if (window < 1 || window >= walk_length) throw ConfigError("window must satisfy 1 <= window < walk_length");
}

Adjacency::Adjacency(const Snapshot& graph, std::size_t node_count, bool directed)
    : offsets_(node_count + 1, 0) {
  std::vector<Edge> arcs(graph.edges().begin(), graph.edges().end());
  if (!directed) {
    arcs.reserve(arcs.size() * 2);
    for (const Edge& e : graph.edges()) arcs.push_back({e.dst, e.src});
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  for (const Edge& e : arcs) ++offsets_[e.src + 1];
  for (std::size_t v = 0; v < node_count; ++v) offsets_[v + 1] += offsets_[v];
  targets_.reserve(arcs.size());
  for (const Edge& e : arcs) targets_.push_back(e.dst);  // arcs are sorted by src
}

PairSet::PairSet(std::size_t node_count, std::span<const Edge> pairs)
    : n_(node_count), dense_(node_count <= kDensePairLimit) {
  if (dense_) {
    bits_.assign((n_ * n_ + 63) / 64, 0);
    for (const Edge& e : pairs) {
      const std::uint64_t key = static_cast<std::uint64_t>(e.src) * n_ + e.dst;
      bits_[key >> 6] |= std::uint64_t{1} << (key & 63);
    }
  } else {
    sparse_.reserve(pairs.size());
    for (const Edge& e : pairs) sparse_.insert(static_cast<std::uint64_t>(e.src) * n_ + e.dst);
  }
}

bool PairSet::contains(NodeId i, NodeId j) const noexcept {
  const std::uint64_t key = static_cast<std::uint64_t>(i) * n_ + j;
  if (dense_) return (bits_[key >> 6] >> (key & 63)) & 1U;
  return sparse_.count(key) != 0;
}

std::vector<Edge> deep_walk_contexts(const Snapshot& current, std::size_t node_count,
                                     const WalkConfig& cfg) {
  cfg.validate();
  const Adjacency adj(current, node_count, cfg.directed);
  Rng rng(cfg.seed);
  std::vector<Edge> pairs;
  std::vector<NodeId> walk;
  walk.reserve(cfg.walk_length);

  for (std::size_t round = 0; round < cfg.walks_per_node; ++round) {
    for (NodeId start = 0; start < node_count; ++start) {
      if (adj.degree(start) == 0) continue;
      walk.clear();
      walk.push_back(start);
      while (walk.size() < cfg.walk_length) {
        const auto nbrs = adj.neighbors(walk.back());
        if (nbrs.empty()) break;  // directed sink
        walk.push_back(nbrs[rng.below(nbrs.size())]);
      }
      for (std::size_t a = 0; a < walk.size(); ++a) {
        const std::size_t lo = a >= cfg.window ? a - cfg.window : 0;
        const std::size_t hi = std::min(walk.size() - 1, a + cfg.window);
        for (std::size_t b = lo; b <= hi; ++b) {
          if (b != a && walk[a] != walk[b]) pairs.push_back({walk[a], walk[b]});
        }
      }
    }
  }
  return pairs;
}

std::vector<Edge> positive_transition_pairs(std::span<const TransitionPair> transitions,
                                            TransitionKind kind) {
  std::vector<Edge> out;
  for (const TransitionPair& tp : transitions) {
    const EdgeList& src = kind == TransitionKind::formation ? tp.formed : tp.dissolved;
    out.insert(out.end(), src.begin(), src.end());
  }
  return out;
}

std::vector<TrainingSample> negative_samples(std::span<const Edge> positives,
                                             const PairSet& exclude, std::size_t num_nodes,
                                             std::size_t k, std::uint64_t seed, Term term) {
  DYNLINK_REQUIRE(num_nodes >= 2, "negative sampling needs at least two nodes");
  DYNLINK_REQUIRE(k >= 1, "negative sampling needs k >= 1");
  Rng rng(seed);
  std::vector<TrainingSample> out;
  out.reserve(positives.size() * k);

  if (!exclude.dense()) {
    for (const Edge& p : positives) {
      for (std::size_t r = 0; r < k; ++r) {
        for (int attempt = 0; attempt < kMaxNegativeAttempts; ++attempt) {
          // uniform over V \ {i}: draw from n-1 slots and skip over i
          auto j = static_cast<NodeId>(rng.below(num_nodes - 1));
          if (j >= p.src) ++j;
          if (!exclude.contains(p.src, j)) {
            out.push_back({p.src, j, -1, term});
            break;
          }
        }
      }
    }
    return out;
  }

  // Same outcome distribution as the rejection loop above, drawn directly:
  // with e eligible targets out of n-1, every attempt fails with probability
  // q = 1 - e/(n-1), so the negative is skipped with probability q^100 and is
  // otherwise uniform over the eligible targets.
  struct Eligible {
    bool built = false;
    double skip = 1.0;
    std::vector<NodeId> targets;
  };
  std::vector<Eligible> cache(num_nodes);
  const double slots = static_cast<double>(num_nodes - 1);
  for (const Edge& p : positives) {
    Eligible& el = cache[p.src];
    if (!el.built) {
      for (NodeId j = 0; j < num_nodes; ++j) {
        if (j != p.src && !exclude.contains(p.src, j)) el.targets.push_back(j);
      }
      const double q = 1.0 - static_cast<double>(el.targets.size()) / slots;
      el.skip = std::pow(q, kMaxNegativeAttempts);
      el.built = true;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (el.targets.empty()) continue;
      if (el.skip > 0.0 && rng.uniform() < el.skip) continue;
      out.push_back({p.src, el.targets[rng.below(el.targets.size())], -1, term});
    }
  }
  return out;
}

std::vector<TrainingSample> negative_samples(std::span<const Edge> positives,
                                             std::size_t num_nodes, std::size_t k,
                                             std::uint64_t seed, Term term) {
  DYNLINK_REQUIRE(num_nodes >= 2, "negative sampling needs at least two nodes");
  const PairSet exclude(num_nodes, positives);
  return negative_samples(positives, exclude, num_nodes, k, seed, term);
}

}  // namespace dynlink
