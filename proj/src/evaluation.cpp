#include "dynlink/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "dynlink/error.hpp"

namespace dynlink {

EvalTask build_task(const TemporalNetwork& net, TimeIndex t, Task task) {
  if (t + 1 >= net.snapshot_count()) {
    throw IndexError("evaluation at origin " + std::to_string(t) + " needs snapshot " +
                     std::to_string(t + 1));
  }
  const Snapshot& next = net.snapshot(t + 1);
  EvalTask out;
  out.origin = t;
  out.task = task;
  for (const Edge& e : candidate_pairs(net, t, task)) {
    const bool present = next.contains(e);
    const bool label = task == Task::formation ? present : !present;
    out.candidates.push_back({e.src, e.dst, label});
    (label ? out.positives : out.negatives)++;
  }
  if (out.positives == 0 || out.negatives == 0) {
    throw DegenerateTaskError(std::string(to_string(task)) + " task at origin " +
                              std::to_string(t) + " has " + std::to_string(out.positives) +
                              " positives and " + std::to_string(out.negatives) + " negatives");
  }
  return out;
}

AucResult auc(std::span<const ScoredItem> items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return items[a].score < items[b].score; });

  AucResult r;
  // Twice the positives' rank sum, so tied (half-integer) ranks stay integral.
  std::uint64_t rank_sum2 = 0;
  std::size_t k = 0;
  while (k < order.size()) {
    std::size_t end = k + 1;
    while (end < order.size() && items[order[end]].score == items[order[k]].score) ++end;
    const std::uint64_t avg_rank2 = (k + 1) + end;  // ranks k+1..end
    for (std::size_t m = k; m < end; ++m) {
      if (items[order[m]].label) {
        rank_sum2 += avg_rank2;
        ++r.positives;
      } else {
        ++r.negatives;
      }
    }
    k = end;
  }
  if (r.positives == 0 || r.negatives == 0) {
    throw DegenerateTaskError("AUC needs both classes (" + std::to_string(r.positives) +
                              " positives, " + std::to_string(r.negatives) + " negatives)");
  }
  const std::uint64_t p = r.positives;
  const std::uint64_t u2 = rank_sum2 - p * (p + 1);
  r.auc = static_cast<double>(u2) / (2.0 * static_cast<double>(p) * static_cast<double>(r.negatives));
  return r;
}

AucResult evaluate(const PairScorer& scorer, const TemporalNetwork& net, TimeIndex t, Task task) {
  const EvalTask et = build_task(net, t, task);
  std::vector<ScoredItem> items;
  items.reserve(et.candidates.size());
  for (const LabeledPair& c : et.candidates) items.push_back({scorer(c.i, c.j), c.label});
  return auc(items);
}

AucResult evaluate_ranked(const std::vector<RankedPrediction>& preds, const TemporalNetwork& net,
                          TimeIndex t) {
  if (preds.empty()) throw DegenerateTaskError("no candidates to evaluate");
  const EvalTask et = build_task(net, t, preds.front().task);
  DYNLINK_REQUIRE(et.candidates.size() == preds.size(),
                  "prediction list does not cover the candidate set");
  const Snapshot& next = net.snapshot(t + 1);
  std::vector<ScoredItem> items;
  items.reserve(preds.size());
  for (const RankedPrediction& p : preds) {
    const bool present = next.contains(p.i, p.j);
    items.push_back({p.raw, p.task == Task::formation ? present : !present});
  }
  return auc(items);
}

}  // namespace dynlink
