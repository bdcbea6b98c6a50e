#include "dynlink/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "dynlink/error.hpp"

namespace dynlink {

const char* to_string(BaselineKind kind) noexcept {
  switch (kind) {
    case BaselineKind::aa: return "AA";
    case BaselineKind::pa: return "PA";
    case BaselineKind::aa_all: return "AA-all";
    case BaselineKind::pa_all: return "PA-all";
    case BaselineKind::last_time: return "LastTime";
  }
  return "?";
}

BaselineKind parse_baseline_kind(const std::string& name) {
  if (name == "AA") return BaselineKind::aa;
  if (name == "PA") return BaselineKind::pa;
  if (name == "AA-all") return BaselineKind::aa_all;
  if (name == "PA-all") return BaselineKind::pa_all;
  if (name == "LastTime" || name == "LL") return BaselineKind::last_time;
  throw ConfigError("unknown baseline '" + name + "'");
}

double adamic_adar(const Adjacency& g, NodeId i, NodeId j) {
  DYNLINK_REQUIRE(i != j, "Adamic-Adar of a node with itself");
  const auto a = g.neighbors(i);
  const auto b = g.neighbors(j);
  double sum = 0.0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      const std::size_t deg = g.degree(*x);
      if (deg > 1) sum += 1.0 / std::log(static_cast<double>(deg));
      ++x;
      ++y;
    }
  }
  return sum;
}

double adamic_adar(const Snapshot& graph, std::size_t node_count, NodeId i, NodeId j) {
  return adamic_adar(Adjacency(graph, node_count, false), i, j);
}

double pref_attach(const Adjacency& g, NodeId i, NodeId j) {
  DYNLINK_REQUIRE(i != j, "preferential attachment of a node with itself");
  return static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j));
}

double pref_attach(const Snapshot& graph, std::size_t node_count, NodeId i, NodeId j) {
  return pref_attach(Adjacency(graph, node_count, false), i, j);
}

double last_time_score(const TemporalNetwork& net, TimeIndex t, NodeId i, NodeId j) {
  net.snapshot(t);  // range check
  for (TimeIndex s = t + 1; s-- > 0;) {
    if (net.snapshot(s).contains(i, j)) return static_cast<double>(s);
  }
  return kNeverLinked;
}

double last_formed_score(const TemporalNetwork& net, TimeIndex t, NodeId i, NodeId j) {
  const double last = last_time_score(net, t, i, j);
  if (last == kNeverLinked) return last;
  auto s = static_cast<TimeIndex>(last);
  while (s > 0 && net.snapshot(s - 1).contains(i, j)) --s;
  return static_cast<double>(s);
}

namespace {

/// last-linkage and last-formation times for every pair that ever linked up
/// to t, in one forward pass.
struct LinkHistory {
  std::unordered_map<std::uint64_t, double> last_seen;
  std::unordered_map<std::uint64_t, double> run_start;
};

LinkHistory scan_history(const TemporalNetwork& net, TimeIndex t) {
  LinkHistory h;
  const std::uint64_t n = net.node_count();
  for (TimeIndex s = 0; s <= t; ++s) {
    for (const Edge& e : net.snapshot(s).edges()) {
      const std::uint64_t key = e.src * n + e.dst;
      auto it = h.last_seen.find(key);
      const bool continuing = it != h.last_seen.end() && it->second == static_cast<double>(s) - 1.0;
      if (!continuing) h.run_start[key] = static_cast<double>(s);
      h.last_seen[key] = static_cast<double>(s);
    }
  }
  return h;
}

}  // namespace

std::vector<RankedPrediction> baseline_rank(const TemporalNetwork& net, TimeIndex t, Task task,
                                            BaselineKind kind, bool complementary) {
  const auto cands = candidate_pairs(net, t, task);
  std::vector<double> raw(cands.size());

  switch (kind) {
    case BaselineKind::aa:
    case BaselineKind::pa:
    case BaselineKind::aa_all:
    case BaselineKind::pa_all: {
      const bool all = kind == BaselineKind::aa_all || kind == BaselineKind::pa_all;
      const Snapshot graph = all ? union_graph(net, t) : net.snapshot(t);
      const Adjacency adj(graph, net.node_count(), false);
      const bool aa = kind == BaselineKind::aa || kind == BaselineKind::aa_all;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        raw[k] = aa ? adamic_adar(adj, cands[k].src, cands[k].dst)
                    : pref_attach(adj, cands[k].src, cands[k].dst);
      }
      break;
    }
    case BaselineKind::last_time: {
      const LinkHistory h = scan_history(net, t);
      const auto& table = task == Task::formation ? h.last_seen : h.run_start;
      const std::uint64_t n = net.node_count();
      for (std::size_t k = 0; k < cands.size(); ++k) {
        const auto it = table.find(cands[k].src * n + cands[k].dst);
        raw[k] = it == table.end() ? kNeverLinked : it->second;
      }
      break;
    }
  }

  const bool negate = complementary && task == Task::dissolution;
  std::vector<RankedPrediction> out;
  out.reserve(cands.size());
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const double v = negate ? -raw[k] : raw[k];
    out.push_back({cands[k].src, cands[k].dst, v, v, task, std::nullopt});
  }
  sort_ranked(out);
  return out;
}

}  // namespace dynlink
