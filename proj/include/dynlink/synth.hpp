#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dynlink/temporal_graph.hpp"

namespace dynlink {

/// Planted-partition network that evolves by rewiring. Each step dissolves
/// a rewire_rate fraction of the edges and lets every affected source form
/// one replacement edge, so the expected edge count is stationary.
struct SynthConfig {
  std::size_t num_nodes = 200;
  std::size_t num_communities = 4;
  std::size_t snapshots = 8;
  double p_in = 0.08;    // initial within-community link probability
  double p_out = 0.005;  // initial between-community link probability
  double rewire_rate = 0.15;
  /// Probability that a newly formed edge stays inside the source's community.
  double churn_asymmetry = 0.95;
  /// Log-normal spread of per-node activity. Active nodes gain and lose
  /// links faster; 0 gives every node the same activity.
  double activity_spread = 1.5;
  /// Relative dissolution hazard of between-community edges (1 = none).
  double between_dissolve_bias = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SynthNetwork {
  TemporalNetwork network;
  std::vector<std::size_t> community;  // per node
  std::vector<double> activity;        // per node
};

SynthNetwork generate_with_truth(const SynthConfig& cfg);

TemporalNetwork generate(const SynthConfig& cfg);

}  // namespace dynlink
