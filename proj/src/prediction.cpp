#include "dynlink/prediction.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "dynlink/error.hpp"

namespace dynlink {

const char* to_string(Task task) noexcept {
  return task == Task::formation ? "formation" : "dissolution";
}

const char* to_string(PredictionMode mode) noexcept {
  switch (mode) {
    case PredictionMode::simple: return "simple";
    case PredictionMode::additive: return "additive";
    case PredictionMode::subtractive: return "subtractive";
  }
  return "?";
}

Task parse_task(const std::string& name) {
  if (name == "formation") return Task::formation;
  if (name == "dissolution") return Task::dissolution;
  throw ConfigError("unknown task '" + name + "'");
}

PredictionMode parse_prediction_mode(const std::string& name) {
  if (name == "simple") return PredictionMode::simple;
  if (name == "additive") return PredictionMode::additive;
  if (name == "subtractive") return PredictionMode::subtractive;
  throw ConfigError("unknown prediction mode '" + name + "'");
}

double raw_pair_score(const EmbeddingState& state, NodeId i, NodeId j, Task task,
                      PredictionMode mode) {
  DYNLINK_REQUIRE(i != j, "cannot score a node paired with itself");
  DYNLINK_REQUIRE(i < state.num_nodes && j < state.num_nodes, "node id outside the model");
  const double s_f = hermitian_score(state.v_f.row(i), state.theta_f, state.v_f.row(j));
  const double s_d = hermitian_score(state.v_d.row(i), state.theta_d, state.v_d.row(j));
  const bool formation = task == Task::formation;
  switch (mode) {
    case PredictionMode::simple: return formation ? s_f : s_d;
    case PredictionMode::additive: return s_f + s_d;
    case PredictionMode::subtractive: return formation ? s_f - s_d : s_d - s_f;
  }
  return 0.0;
}

double score_pair(const EmbeddingState& state, NodeId i, NodeId j, Task task, PredictionMode mode) {
  return sigmoid(raw_pair_score(state, i, j, task, mode));
}

std::vector<Edge> candidate_pairs(const TemporalNetwork& net, TimeIndex t, Task task) {
  const Snapshot& g = net.snapshot(t);
  if (task == Task::dissolution) return {g.edges().begin(), g.edges().end()};
  std::vector<Edge> out;
  const auto n = static_cast<NodeId>(net.node_count());
  out.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) - g.size());
  auto it = g.edges().begin();
  const auto end = g.edges().end();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) continue;
      const Edge e{i, j};
      while (it != end && *it < e) ++it;
      if (it != end && *it == e) continue;
      out.push_back(e);
    }
  }
  return out;
}

void sort_ranked(std::vector<RankedPrediction>& preds) {
  std::sort(preds.begin(), preds.end(), [](const RankedPrediction& a, const RankedPrediction& b) {
    if (a.raw != b.raw) return a.raw > b.raw;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
}

std::vector<RankedPrediction> rank_predictions(const EmbeddingState& state,
                                               const TemporalNetwork& net, TimeIndex t,
                                               Task task, PredictionMode mode) {
  DYNLINK_REQUIRE(state.num_nodes == net.node_count(),
                  "model node count differs from the network's node set");
  const auto cands = candidate_pairs(net, t, task);
  std::vector<RankedPrediction> out;
  out.reserve(cands.size());
  for (const Edge& e : cands) {
    const double raw = raw_pair_score(state, e.src, e.dst, task, mode);
    out.push_back({e.src, e.dst, raw, sigmoid(raw), task, std::nullopt});
  }
  sort_ranked(out);
  return out;
}

void attach_labels(std::vector<RankedPrediction>& preds, const TemporalNetwork& net, TimeIndex t) {
  if (t + 1 >= net.snapshot_count()) return;
  const Snapshot& next = net.snapshot(t + 1);
  for (RankedPrediction& p : preds) {
    const bool present = next.contains(p.i, p.j);
    p.label = p.task == Task::formation ? present : !present;
  }
}

void write_predictions_csv(std::ostream& out, const std::vector<RankedPrediction>& preds,
                           const TemporalNetwork& net) {
  out << "task,i,j,score,label\n";
  char buf[64];
  for (const RankedPrediction& p : preds) {
    const auto res = std::to_chars(buf, buf + sizeof buf, p.score);
    out << to_string(p.task) << ',' << net.node_label(p.i) << ',' << net.node_label(p.j) << ',';
    out.write(buf, res.ptr - buf);
    out << ',';
    if (p.label) out << (*p.label ? 1 : 0);
    out << '\n';
  }
}

}  // namespace dynlink
