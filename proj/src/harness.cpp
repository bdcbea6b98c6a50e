#include "dynlink/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "dynlink/error.hpp"
#include "dynlink/evaluation.hpp"

#ifndef DYNLINK_VERSION_STRING
#define DYNLINK_VERSION_STRING "0.0.0"
#endif

namespace dynlink {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string fmt(std::uint64_t x) { return std::to_string(x); }

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(seeds[k]);
  }
  return out;
}

std::string join_methods(const std::vector<Method>& methods) {
  std::string out;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    if (k) out += ',';
    out += to_string(methods[k]);
  }
  return out;
}

Entries config_entries(const ExperimentConfig& cfg) {
  Entries e;
  if (!cfg.dataset_path.empty()) {
    e.emplace_back("dataset", cfg.dataset_path);
    e.emplace_back("symmetrize", cfg.symmetrize ? "true" : "false");
  } else {
    const SynthConfig& s = cfg.synth;
    e.emplace_back("synth.num_nodes", fmt(std::uint64_t{s.num_nodes}));
    e.emplace_back("synth.num_communities", fmt(std::uint64_t{s.num_communities}));
    e.emplace_back("synth.snapshots", fmt(std::uint64_t{s.snapshots}));
    e.emplace_back("synth.p_in", fmt(s.p_in));
    e.emplace_back("synth.p_out", fmt(s.p_out));
    e.emplace_back("synth.rewire_rate", fmt(s.rewire_rate));
    e.emplace_back("synth.churn_asymmetry", fmt(s.churn_asymmetry));
    e.emplace_back("synth.activity_spread", fmt(s.activity_spread));
    e.emplace_back("synth.between_dissolve_bias", fmt(s.between_dissolve_bias));
    e.emplace_back("synth.seed", fmt(s.seed));
  }
  e.emplace_back("origin", cfg.origin ? fmt(std::uint64_t{*cfg.origin}) : "last");
  e.emplace_back("methods", join_methods(cfg.methods));
  const TrainConfig& t = cfg.train;
  e.emplace_back("d", fmt(std::uint64_t{t.d}));
  e.emplace_back("lambda_f", fmt(t.lambda_f));
  e.emplace_back("lambda_d", fmt(t.lambda_d));
  e.emplace_back("eta1", fmt(t.eta1));
  e.emplace_back("eta2", fmt(t.eta2));
  e.emplace_back("p", fmt(std::uint64_t{t.p}));
  e.emplace_back("epochs", fmt(std::uint64_t{t.epochs}));
  e.emplace_back("k_neg", fmt(std::uint64_t{t.k_neg}));
  e.emplace_back("walks_per_node", fmt(std::uint64_t{t.walk.walks_per_node}));
  e.emplace_back("walk_length", fmt(std::uint64_t{t.walk.walk_length}));
  e.emplace_back("window", fmt(std::uint64_t{t.walk.window}));
  e.emplace_back("directed_walks", t.walk.directed ? "true" : "false");
  e.emplace_back("mode", to_string(cfg.mode));
  e.emplace_back("complementary", cfg.complementary ? "true" : "false");
  e.emplace_back("seeds", join_seeds(cfg.seeds));
  return e;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

TimeIndex resolve_origin(const ExperimentConfig& cfg, const TemporalNetwork& net) {
  if (net.snapshot_count() < 3) {
    throw IndexError("need at least 3 snapshots to train at t and evaluate at t+1");
  }
  const TimeIndex last = net.snapshot_count() - 2;
  const TimeIndex t = cfg.origin.value_or(last);
  if (t < 1 || t > last) {
    throw IndexError("origin " + std::to_string(t) + " outside [1, " + std::to_string(last) + "]");
  }
  return t;
}

TrainMode train_mode(Method m) {
  switch (m) {
    case Method::semigraph: return TrainMode::semigraph;
    case Method::supervised: return TrainMode::supervised_only;
    case Method::graphemb: return TrainMode::embedding_only;
    default: break;
  }
  throw ContractViolation("not a learned method");
}

BaselineKind baseline_kind(Method m) {
  switch (m) {
    case Method::aa: return BaselineKind::aa;
    case Method::pa: return BaselineKind::pa;
    case Method::aa_all: return BaselineKind::aa_all;
    case Method::pa_all: return BaselineKind::pa_all;
    case Method::last_time: return BaselineKind::last_time;
    default: break;
  }
  throw ContractViolation("not a baseline method");
}

constexpr Task kTasks[] = {Task::formation, Task::dissolution};

struct CellOutcome {
  std::optional<AucResult> result;
  std::string note;
};

template <class Fn>
CellOutcome guarded(Fn&& fn) {
  try {
    return {fn(), {}};
  } catch (const DegenerateTaskError& e) {
    return {std::nullopt, std::string("skipped: ") + e.what()};
  }
}

ResultRow make_row(const std::string& dataset, Method m, Task task, TimeIndex t,
                   std::uint64_t seed, const CellOutcome& cell, const std::string& hash) {
  ResultRow row;
  row.dataset = dataset;
  row.method = to_string(m);
  row.task = task;
  row.origin = t;
  row.seed = seed;
  row.note = cell.note;
  row.config_hash = hash;
  if (cell.result) {
    row.auc = cell.result->auc;
    row.positives = cell.result->positives;
    row.negatives = cell.result->negatives;
  }
  return row;
}

void run_cells(const ExperimentConfig& cfg, const TemporalNetwork& net, TimeIndex t,
               const std::string& dataset, const std::string& hash,
               std::vector<ResultRow>& rows) {
  for (Method m : cfg.methods) {
    if (is_learned(m)) {
      for (std::uint64_t seed : cfg.seeds) {
        TrainConfig tc = cfg.train;
        tc.seed = seed;
        std::optional<EmbeddingState> state;
        std::string failure;
        try {
          state = train(net, t, tc, train_mode(m)).state;
        } catch (const DivergedError& e) {
          failure = std::string("skipped: ") + e.what();
        }
        for (Task task : kTasks) {
          CellOutcome cell{std::nullopt, failure};
          if (state) {
            cell = guarded([&] {
              return evaluate_ranked(rank_predictions(*state, net, t, task, cfg.mode), net, t);
            });
          }
          rows.push_back(make_row(dataset, m, task, t, seed, cell, hash));
        }
      }
    } else {
      for (Task task : kTasks) {
        const CellOutcome cell = guarded([&] {
          return evaluate_ranked(baseline_rank(net, t, task, baseline_kind(m), cfg.complementary),
                                 net, t);
        });
        for (std::uint64_t seed : cfg.seeds) {
          rows.push_back(make_row(dataset, m, task, t, seed, cell, hash));
        }
      }
    }
  }
}

void csv_field(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  return out;
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::semigraph: return "semigraph";
    case Method::supervised: return "supervised";
    case Method::graphemb: return "graphemb";
    case Method::aa: return "AA";
    case Method::pa: return "PA";
    case Method::aa_all: return "AA-all";
    case Method::pa_all: return "PA-all";
    case Method::last_time: return "LastTime";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : all_methods()) {
    if (name == to_string(m)) return m;
  }
  if (name == "LL") return Method::last_time;
  throw ConfigError("unknown method '" + name + "'");
}

bool is_learned(Method method) noexcept {
  return method == Method::semigraph || method == Method::supervised ||
         method == Method::graphemb;
}

std::vector<Method> all_methods() {
  return {Method::semigraph, Method::supervised, Method::graphemb, Method::aa,
          Method::pa,        Method::aa_all,     Method::pa_all,   Method::last_time};
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw ConfigError("at least one method is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (dataset_path.empty()) synth.validate();
  bool learned = false;
  for (Method m : methods) learned = learned || is_learned(m);
  if (learned) train.validate();
}

std::string canonical_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_entries(cfg)) out += k + '=' + v + '\n';
  return out;
}

std::string config_hash(const ExperimentConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_config(cfg))));
  return buf;
}

std::string dataset_name(const ExperimentConfig& cfg) {
  if (!cfg.dataset_path.empty()) return std::filesystem::path(cfg.dataset_path).stem().string();
  return "synth-n" + std::to_string(cfg.synth.num_nodes) + "-s" + std::to_string(cfg.synth.seed);
}

TemporalNetwork load_dataset(const ExperimentConfig& cfg) {
  if (!cfg.dataset_path.empty()) {
    return load_edge_list(cfg.dataset_path, IngestOptions{cfg.symmetrize});
  }
  return generate(cfg.synth);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, load_dataset(cfg));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const TemporalNetwork& net) {
  cfg.validate();
  const TimeIndex t = resolve_origin(cfg, net);
  ExperimentConfig pinned = cfg;
  pinned.origin = t;
  ExperimentResult result;
  run_cells(pinned, net, t, dataset_name(cfg), config_hash(pinned), result.rows);
  result.summary = summarize(result.rows);
  return result;
}

ExperimentResult run_rolling(const ExperimentConfig& cfg, const TemporalNetwork& net,
                             TimeIndex t_start, TimeIndex t_end, bool check_leakage) {
  if (t_start > t_end) throw ConfigError("rolling range is empty");
  ExperimentResult result;
  for (TimeIndex t = t_start; t <= t_end; ++t) {
    ExperimentConfig at = cfg;
    at.origin = t;
    ExperimentResult one = run_experiment(at, net);
    if (check_leakage) {
      // Nothing after t+1 may influence the rows of origin t.
      const ExperimentResult cut = run_experiment(at, net.truncated(t + 2));
      result.leakage.push_back({t, cut.rows == one.rows});
    }
    result.rows.insert(result.rows.end(), one.rows.begin(), one.rows.end());
  }
  result.summary = summarize(result.rows);
  return result;
}

const char* to_string(SweepParam param) noexcept {
  return param == SweepParam::d ? "d" : "lambda";
}

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "d") return SweepParam::d;
  if (name == "lambda") return SweepParam::lambda;
  throw ConfigError("unknown sweep parameter '" + name + "' (expected d or lambda)");
}

ExperimentResult run_sweep(const ExperimentConfig& cfg, const TemporalNetwork& net,
                           SweepParam param, const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  ExperimentResult result;
  for (double v : values) {
    ExperimentConfig at = cfg;
    at.methods = {Method::semigraph};
    if (param == SweepParam::d) {
      if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("d values must be positive integers");
      at.train.d = static_cast<std::size_t>(v);
    } else {
      at.train.lambda_f = at.train.lambda_d = v;
    }
    ExperimentResult one = run_experiment(at, net);
    for (ResultRow& row : one.rows) {
      row.param = to_string(param);
      row.value = fmt(v);
    }
    result.rows.insert(result.rows.end(), one.rows.begin(), one.rows.end());
  }
  result.summary = summarize(result.rows);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, int, TimeIndex, std::string, std::string>;
  std::map<Key, std::vector<double>> groups;
  std::vector<Key> order;
  for (const ResultRow& r : rows) {
    Key key{r.dataset, r.method, static_cast<int>(r.task), r.origin, r.param, r.value};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    if (r.auc) it->second.push_back(*r.auc);
  }
  std::vector<SummaryRow> out;
  out.reserve(order.size());
  for (const Key& key : order) {
    const auto& aucs = groups.at(key);
    SummaryRow s;
    s.dataset = std::get<0>(key);
    s.method = std::get<1>(key);
    s.task = static_cast<Task>(std::get<2>(key));
    s.origin = std::get<3>(key);
    s.param = std::get<4>(key);
    s.value = std::get<5>(key);
    s.runs = aucs.size();
    if (!aucs.empty()) {
      double mean = 0.0;
      for (double a : aucs) mean += a;
      mean /= static_cast<double>(aucs.size());
      double ss = 0.0;
      for (double a : aucs) ss += (a - mean) * (a - mean);
      s.mean_auc = mean;
      s.std_auc = aucs.size() > 1 ? std::sqrt(ss / static_cast<double>(aucs.size() - 1)) : 0.0;
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "dataset,method,task,origin_t,auc,positives,negatives,seed,param,value,note,config_hash\n";
  for (const ResultRow& r : rows) {
    csv_field(out, r.dataset);
    out << ',' << r.method << ',' << to_string(r.task) << ',' << r.origin << ',';
    if (r.auc) out << fmt(*r.auc);
    out << ',' << r.positives << ',' << r.negatives << ',' << r.seed << ',' << r.param << ','
        << r.value << ',';
    csv_field(out, r.note);
    out << ',' << r.config_hash << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "dataset,method,task,origin_t,param,value,mean_auc,std_auc,runs\n";
  for (const SummaryRow& s : rows) {
    csv_field(out, s.dataset);
    out << ',' << s.method << ',' << to_string(s.task) << ',' << s.origin << ',' << s.param << ','
        << s.value << ',';
    if (s.mean_auc) out << fmt(*s.mean_auc);
    out << ',' << fmt(s.std_auc) << ',' << s.runs << '\n';
  }
}

void write_manifest(std::ostream& out, const ExperimentConfig& cfg, const std::string& command,
                    const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["tool"] = "dynlink";
  j["version"] = version();
  j["command"] = command;
  j["dataset"] = dataset_name(cfg);
  j["config_hash"] = config_hash(cfg);
  nlohmann::ordered_json conf = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_entries(cfg)) conf[k] = v;
  j["config"] = conf;
  j["seeds"] = cfg.seeds;
  j["rows"] = result.rows.size();
  // Rows carry the hash of the config they actually ran (origin resolved,
  // sweep value applied), which can differ from the invocation's hash.
  std::vector<std::string> row_hashes;
  for (const ResultRow& r : result.rows) {
    if (std::find(row_hashes.begin(), row_hashes.end(), r.config_hash) == row_hashes.end()) {
      row_hashes.push_back(r.config_hash);
    }
  }
  j["row_config_hashes"] = row_hashes;
  if (!result.leakage.empty()) {
    nlohmann::ordered_json leak = nlohmann::ordered_json::array();
    for (const LeakageCheck& c : result.leakage) {
      leak.push_back({{"origin", c.origin}, {"identical", c.identical}});
    }
    j["leakage_check"] = leak;
  }
  out << j.dump(2) << '\n';
}

void write_outputs(const ExperimentConfig& cfg, const std::string& command,
                   const ExperimentResult& result) {
  if (cfg.output_dir.empty()) throw ConfigError("output directory not set");
  const std::filesystem::path dir(cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto results = open_output(dir / "results.csv");
  write_results_csv(results, result.rows);
  auto summary = open_output(dir / "summary.csv");
  write_summary_csv(summary, result.summary);
  auto manifest = open_output(dir / "manifest.json");
  write_manifest(manifest, cfg, command, result);
  if (!results || !summary || !manifest) throw IoError("write failed under " + dir.string());
}

const char* version() noexcept { return DYNLINK_VERSION_STRING; }

}  // namespace dynlink
