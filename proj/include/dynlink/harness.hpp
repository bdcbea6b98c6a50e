#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynlink/baselines.hpp"
#include "dynlink/prediction.hpp"
#include "dynlink/synth.hpp"
#include "dynlink/temporal_graph.hpp"
#include "dynlink/training.hpp"

namespace dynlink {

enum class Method { semigraph, supervised, graphemb, aa, pa, aa_all, pa_all, last_time };

const char* to_string(Method method) noexcept;
Method parse_method(const std::string& name);
bool is_learned(Method method) noexcept;
std::vector<Method> all_methods();

struct ExperimentConfig {
  /// Edge-list file; when empty the network comes from `synth`.
  std::string dataset_path;
  SynthConfig synth;
  /// Read the dataset as undirected (both directions of every row).
  bool symmetrize = false;
  /// Origin t; unset means the last transition (snapshot_count - 2).
  std::optional<TimeIndex> origin;
  std::vector<Method> methods = all_methods();
  TrainConfig train;
  PredictionMode mode = PredictionMode::additive;
  /// Negate heuristic scores for dissolution.
  bool complementary = true;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string output_dir;

  void validate() const;
};

/// One (method, task, seed) cell. `auc` is unset for a skipped cell and
/// `note` says why.
struct ResultRow {
  std::string dataset;
  std::string method;
  Task task = Task::formation;
  TimeIndex origin = 0;
  std::optional<double> auc;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::uint64_t seed = 0;
  std::string param;  // sweep parameter, empty otherwise
  std::string value;
  std::string note;
  std::string config_hash;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Mean and sample standard deviation over the seeds of one cell group.
struct SummaryRow {
  std::string dataset;
  std::string method;
  Task task = Task::formation;
  TimeIndex origin = 0;
  std::string param;
  std::string value;
  std::optional<double> mean_auc;
  double std_auc = 0.0;
  std::size_t runs = 0;  // seeds with a finite AUC
};

struct LeakageCheck {
  TimeIndex origin = 0;
  bool identical = false;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
  std::vector<LeakageCheck> leakage;  // run_rolling only
};

/// Canonical key=value dump of every setting that affects results; the
/// config hash is taken over this text.
std::string canonical_config(const ExperimentConfig& cfg);
/// 16 hex digits (FNV-1a 64).
std::string config_hash(const ExperimentConfig& cfg);

/// Short dataset tag used in the `dataset` column.
std::string dataset_name(const ExperimentConfig& cfg);
TemporalNetwork load_dataset(const ExperimentConfig& cfg);

/// Every method x task x seed at one origin. Baselines are seed independent
/// and repeat their value on each seed's row.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg, const TemporalNetwork& net);

/// run_experiment at every origin in [t_start, t_end]. With `check_leakage`
/// each origin is re-run on a copy truncated after t+1 and the rows compared.
ExperimentResult run_rolling(const ExperimentConfig& cfg, const TemporalNetwork& net,
                             TimeIndex t_start, TimeIndex t_end, bool check_leakage = true);

enum class SweepParam { d, lambda };

const char* to_string(SweepParam param) noexcept;
SweepParam parse_sweep_param(const std::string& name);

/// SemiGraph once per value; lambda sets lambda_f = lambda_d.
ExperimentResult run_sweep(const ExperimentConfig& cfg, const TemporalNetwork& net,
                           SweepParam param, const std::vector<double>& values);

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

/// dataset,method,task,origin_t,auc,positives,negatives,seed,param,value,note,config_hash
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
/// dataset,method,task,origin_t,param,value,mean_auc,std_auc,runs
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_manifest(std::ostream& out, const ExperimentConfig& cfg, const std::string& command,
                    const ExperimentResult& result);

/// results.csv, summary.csv and manifest.json under cfg.output_dir.
void write_outputs(const ExperimentConfig& cfg, const std::string& command,
                   const ExperimentResult& result);

/// Library version string.
const char* version() noexcept;

}  // namespace dynlink
