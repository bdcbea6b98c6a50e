#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dynlink/prediction.hpp"
#include "dynlink/temporal_graph.hpp"

namespace dynlink {

struct LabeledPair {
  NodeId i = 0;
  NodeId j = 0;
  bool label = false;
};

/// Candidates at origin t labelled by the transition into t+1.
struct EvalTask {
  TimeIndex origin = 0;
  Task task = Task::formation;
  std::vector<LabeledPair> candidates;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

struct ScoredItem {
  double score = 0.0;
  bool label = false;
};

struct AucResult {
  double auc = 0.5;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

EvalTask build_task(const TemporalNetwork& net, TimeIndex t, Task task);

/// Mann-Whitney AUC with average ranks for ties. Throws DegenerateTaskError
/// when a class is empty.
AucResult auc(std::span<const ScoredItem> items);

/// Scores one candidate pair; higher means more likely.
using PairScorer = std::function<double(NodeId, NodeId)>;

AucResult evaluate(const PairScorer& scorer, const TemporalNetwork& net, TimeIndex t, Task task);

/// AUC of an already-ranked prediction list against the labels at t+1.
AucResult evaluate_ranked(const std::vector<RankedPrediction>& preds, const TemporalNetwork& net,
                          TimeIndex t);

}  // namespace dynlink
