#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynlink/embedding.hpp"
#include "dynlink/temporal_graph.hpp"

namespace dynlink {

enum class Task { formation, dissolution };

enum class PredictionMode {
  simple,       // each task uses its own parameters
  additive,     // s_f + s_d for both tasks (rewiring view)
  subtractive,  // s_f - s_d for formation, s_d - s_f for dissolution
};

const char* to_string(Task task) noexcept;
const char* to_string(PredictionMode mode) noexcept;
Task parse_task(const std::string& name);
PredictionMode parse_prediction_mode(const std::string& name);

struct RankedPrediction {
  NodeId i = 0;
  NodeId j = 0;
  double raw = 0.0;    // pre-sigmoid value, used for ranking
  double score = 0.0;  // sigmoid(raw), or the raw heuristic value for baselines
  Task task = Task::formation;
  std::optional<bool> label;
};

/// Pre-sigmoid combination for a pair under a mode.
double raw_pair_score(const EmbeddingState& state, NodeId i, NodeId j, Task task,
                      PredictionMode mode);

/// sigmoid(raw_pair_score(...)), in (0, 1).
double score_pair(const EmbeddingState& state, NodeId i, NodeId j, Task task, PredictionMode mode);

/// Formation: every ordered non-edge i != j of G_t. Dissolution: edges of G_t.
std::vector<Edge> candidate_pairs(const TemporalNetwork& net, TimeIndex t, Task task);

/// Descending by raw value; ties ordered by (i, j).
void sort_ranked(std::vector<RankedPrediction>& preds);

std::vector<RankedPrediction> rank_predictions(const EmbeddingState& state,
                                               const TemporalNetwork& net, TimeIndex t,
                                               Task task, PredictionMode mode);

/// Fills `label` from the transition into t+1 when it exists.
void attach_labels(std::vector<RankedPrediction>& preds, const TemporalNetwork& net, TimeIndex t);

/// CSV `task,i,j,score,label`; i and j are written as node labels, an
/// unknown label is left empty.
void write_predictions_csv(std::ostream& out, const std::vector<RankedPrediction>& preds,
                           const TemporalNetwork& net);

}  // namespace dynlink
