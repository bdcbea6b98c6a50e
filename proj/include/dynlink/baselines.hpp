#pragma once

#include <limits>
#include <string>
#include <vector>

#include "dynlink/prediction.hpp"
#include "dynlink/sampling.hpp"
#include "dynlink/temporal_graph.hpp"

namespace dynlink {

enum class BaselineKind { aa, pa, aa_all, pa_all, last_time };

const char* to_string(BaselineKind kind) noexcept;
BaselineKind parse_baseline_kind(const std::string& name);

/// Returned by the last-time scores for pairs that never linked.
inline constexpr double kNeverLinked = -std::numeric_limits<double>::infinity();

/// Adamic-Adar over the undirected view; common neighbours of degree <= 1
/// are skipped.
double adamic_adar(const Adjacency& undirected, NodeId i, NodeId j);
double adamic_adar(const Snapshot& graph, std::size_t node_count, NodeId i, NodeId j);

/// deg(i) * deg(j) over the undirected view.
double pref_attach(const Adjacency& undirected, NodeId i, NodeId j);
double pref_attach(const Snapshot& graph, std::size_t node_count, NodeId i, NodeId j);

/// Most recent s <= t with (i,j) in G_s, or kNeverLinked.
double last_time_score(const TemporalNetwork& net, TimeIndex t, NodeId i, NodeId j);

/// Start of the most recent run of consecutive snapshots containing (i,j)
/// and ending no later than t, or kNeverLinked. On the edges of G_t this is
/// when the current link formed; last_time_score is t for all of them.
double last_formed_score(const TemporalNetwork& net, TimeIndex t, NodeId i, NodeId j);

/// Every candidate of `task` at origin t, scored and sorted like the model's
/// rankings. With `complementary` on the dissolution task the raw score is
/// negated before ranking; the flag has no effect on formation.
std::vector<RankedPrediction> baseline_rank(const TemporalNetwork& net, TimeIndex t, Task task,
                                            BaselineKind kind, bool complementary = true);

}  // namespace dynlink
