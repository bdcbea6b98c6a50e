#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynlink/embedding.hpp"
#include "dynlink/sampling.hpp"
#include "dynlink/temporal_graph.hpp"

namespace dynlink {

enum class TrainMode {
  semigraph,        // supervised + weighted context terms
  supervised_only,  // past transitions only
  embedding_only,   // context terms only
};

const char* to_string(TrainMode mode) noexcept;
TrainMode parse_train_mode(const std::string& name);

struct TrainConfig {
  std::size_t d = 3;
  double lambda_f = 0.05;
  double lambda_d = 0.05;
  double eta1 = 0.05;   // vector learning rate
  double eta2 = 5e-6;   // phase learning rate
  std::size_t p = 0;    // past window length, 0 = every transition up to t
  std::size_t epochs = 50;
  std::size_t k_neg = 5;
  WalkConfig walk;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochLoss {
  std::size_t epoch = 0;
  double l_fs = 0.0, l_fu = 0.0, l_f = 0.0;
  double l_ds = 0.0, l_du = 0.0, l_d = 0.0;
  std::array<std::size_t, kTermCount> samples{};
};

struct LossReport {
  std::vector<EpochLoss> epochs;

  /// CSV: epoch,L_fs,L_fu,L_f,L_ds,L_du,L_d
  void write_csv(std::ostream& out) const;
};

/// Gradient of log sigmoid(gamma * score) for one sample. `dj` is the
/// gradient for v_j on supervised terms and for u_c on context terms.
/// `dtheta` is empty for context terms.
struct SparseGradient {
  Term term = Term::formation_supervised;
  NodeId i = 0;
  NodeId j = 0;
  ComplexVec di;
  ComplexVec dj;
  std::vector<double> dtheta;
};

/// Raw score a sample's term assigns to (i, j).
double sample_score(const EmbeddingState& state, const TrainingSample& s);

double sample_loglik(const EmbeddingState& state, const TrainingSample& s);

SparseGradient sample_gradient(const EmbeddingState& state, const TrainingSample& s);

/// One ascent step on a single sample; returns the sample's log-likelihood
/// before the step. Vector parameters move by eta_v * weight * grad, angles
/// by eta_theta * weight * grad.
double sgd_step(EmbeddingState& state, const TrainingSample& s, double eta_v,
                double eta_theta, double weight);

/// Training view plus the fixed inputs every epoch is drawn from.
class SampleSource {
 public:
  SampleSource(const TemporalNetwork& net, TimeIndex t, const TrainConfig& cfg, TrainMode mode);

  bool active(Term term) const noexcept { return active_[static_cast<std::size_t>(term)]; }
  double weight(Term term) const noexcept { return weight_[static_cast<std::size_t>(term)]; }
  std::size_t node_count() const noexcept { return node_count_; }

  /// Positives and negatives of every active term, globally shuffled.
  /// Deterministic in (cfg.seed, epoch).
  std::vector<TrainingSample> epoch_samples(std::size_t epoch) const;

 private:
  TrainConfig cfg_;
  std::size_t node_count_;
  Snapshot current_;
  std::vector<Edge> formed_;
  std::vector<Edge> dissolved_;
  std::array<bool, kTermCount> active_{};
  std::array<double, kTermCount> weight_{};
};

struct TrainResult {
  EmbeddingState state;
  LossReport report;
};

/// Fits an EmbeddingState on snapshots 0..t of `net`. Nothing after t is read.
TrainResult train(const TemporalNetwork& net, TimeIndex t, const TrainConfig& cfg, TrainMode mode);

}  // namespace dynlink
