#include "dynlink/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "dynlink/error.hpp"
#include "dynlink/rng.hpp"

namespace dynlink {

namespace {

constexpr int kMaxStepRetries = 50;

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - rng.uniform();  // (0, 1]
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t key(const Edge& e, std::size_t n) { return static_cast<std::uint64_t>(e.src) * n + e.dst; }

struct Generator {
  const SynthConfig& cfg;
  std::size_t n;
  std::vector<std::size_t> community;
  std::vector<double> activity;
  Rng rng;

  explicit Generator(const SynthConfig& c)
      : cfg(c), n(c.num_nodes), community(n), activity(n), rng(c.seed) {
    for (std::size_t i = 0; i < n; ++i) community[i] = i * cfg.num_communities / n;
    for (double& a : activity) a = std::exp(cfg.activity_spread * standard_normal(rng));
  }

  EdgeList initial() {
    EdgeList edges;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        const double p = community[i] == community[j] ? cfg.p_in : cfg.p_out;
        if (rng.bernoulli(p)) edges.push_back({i, j});
      }
    }
    return edges;
  }

  double dissolve_weight(const Edge& e) const {
    const double bias = community[e.src] == community[e.dst] ? 1.0 : cfg.between_dissolve_bias;
    return activity[e.src] * activity[e.dst] * bias;
  }

  /// Weighted sample of `count` edges without replacement
  /// (exponential-key method: smallest -log(u)/w wins).
  std::vector<std::size_t> pick_dissolved(const EdgeList& edges, std::size_t count) {
    std::vector<std::pair<double, std::size_t>> keys;
    keys.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const double u = 1.0 - rng.uniform();
      keys.emplace_back(-std::log(u) / dissolve_weight(edges[k]), k);
    }
    count = std::min(count, keys.size());
    std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(count), keys.end());
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(keys[k].second);
    return out;
  }

  /// Target for a new edge out of `src`: inside src's community with
  /// probability churn_asymmetry, then proportional to activity among
  /// eligible nodes. Returns n when nothing is eligible.
  std::size_t pick_target(NodeId src, const std::unordered_set<std::uint64_t>& taken) {
    const bool within = rng.bernoulli(cfg.churn_asymmetry);
    for (int pass = 0; pass < 2; ++pass) {
      const bool want_within = pass == 0 ? within : !within;
      double total = 0.0;
      for (NodeId j = 0; j < n; ++j) {
        if (eligible(src, j, want_within, taken)) total += activity[j];
      }
      if (total <= 0.0) continue;
      double r = rng.uniform() * total;
      std::size_t last = n;
      for (NodeId j = 0; j < n; ++j) {
        if (!eligible(src, j, want_within, taken)) continue;
        last = j;
        r -= activity[j];
        if (r < 0.0) return j;
      }
      return last;
    }
    return n;
  }

  bool eligible(NodeId src, NodeId j, bool within,
                const std::unordered_set<std::uint64_t>& taken) const {
    if (j == src) return false;
    if ((community[j] == community[src]) != within) return false;
    return taken.count(key({src, j}, n)) == 0;
  }

  EdgeList step(const EdgeList& prev) {
    const auto target = static_cast<std::size_t>(std::llround(cfg.rewire_rate * static_cast<double>(prev.size())));
    const std::size_t count = std::max<std::size_t>(1, target);
    const auto dissolved = pick_dissolved(prev, count);

    // Pairs that existed at the previous step cannot re-form right away,
    // so every transition has disjoint formed/dissolved sets.
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(prev.size() * 2);
    for (const Edge& e : prev) taken.insert(key(e, n));

    std::vector<bool> drop(prev.size(), false);
    for (std::size_t k : dissolved) drop[k] = true;
    EdgeList next;
    next.reserve(prev.size());
    for (std::size_t k = 0; k < prev.size(); ++k) {
      if (!drop[k]) next.push_back(prev[k]);
    }
    for (std::size_t k : dissolved) {
      const NodeId src = prev[k].src;
      const std::size_t j = pick_target(src, taken);
      if (j == n) continue;
      const Edge e{src, static_cast<NodeId>(j)};
      taken.insert(key(e, n));
      next.push_back(e);
    }
    std::sort(next.begin(), next.end());
    return next;
  }
};

}  // namespace

void SynthConfig::validate() const {
  if (num_nodes < 2) throw ConfigError("synth needs at least 2 nodes");
  if (num_communities < 1 || num_communities > num_nodes) {
    throw ConfigError("num_communities must be in [1, num_nodes]");
  }
  if (snapshots < 3) throw ConfigError("synth needs at least 3 snapshots");
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(p_in) || !prob(p_out) || !prob(churn_asymmetry)) {
    throw ConfigError("probabilities must lie in [0, 1]");
  }
  if (!(rewire_rate > 0.0 && rewire_rate < 1.0)) throw ConfigError("rewire_rate must lie in (0, 1)");
  if (!(activity_spread >= 0.0)) throw ConfigError("activity_spread must be >= 0");
  if (!(between_dissolve_bias > 0.0)) throw ConfigError("between_dissolve_bias must be > 0");

  // Expected initial edge count under the planted partition.
  const double n = static_cast<double>(num_nodes);
  const double block = n / static_cast<double>(num_communities);
  const double expected = n * (block - 1.0) * p_in + n * (n - block) * p_out;
  if (expected < 1.0) throw ConfigError("p_in/p_out imply an empty initial graph");
}

SynthNetwork generate_with_truth(const SynthConfig& cfg) {
  cfg.validate();
  Generator gen(cfg);
  std::vector<EdgeList> snaps;
  snaps.reserve(cfg.snapshots);

  EdgeList first;
  for (int attempt = 0; attempt < kMaxStepRetries && first.empty(); ++attempt) first = gen.initial();
  if (first.empty()) throw ConfigError("initial graph came out empty");
  snaps.push_back(std::move(first));

  while (snaps.size() < cfg.snapshots) {
    const EdgeList& prev = snaps.back();
    EdgeList next;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxStepRetries && !ok; ++attempt) {
      next = gen.step(prev);
      ok = !edge_difference(next, prev).empty() && !edge_difference(prev, next).empty();
    }
    if (!ok) throw ConfigError("could not produce a non-degenerate transition");
    snaps.push_back(std::move(next));
  }

  SynthNetwork out{TemporalNetwork(cfg.num_nodes, std::move(snaps)), std::move(gen.community),
                   std::move(gen.activity)};
  return out;
}

TemporalNetwork generate(const SynthConfig& cfg) { return generate_with_truth(cfg).network; }

}  // namespace dynlink
