// Command-line front end. Talks to the library only through the C API.
//
// Shared settings live on the top-level app so that a flat key=value config
// file (--config) can set any of them; subcommands fall through to it and a
// flag on the command line wins over the file.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dynlink/dynlink.h"

namespace {

struct Settings {
  // data
  std::string data;
  bool symmetrize = false;
  dl_synth_config synth{};
  long origin = -1;

  // training
  dl_train_config train{};
  double lambda = -1.0;  // sets both when given
  std::string train_mode = "semigraph";

  // prediction / evaluation
  std::string prediction_mode = "additive";
  bool no_complementary = false;
  std::vector<std::string> methods;
  std::string method_list;  // `methods` joined with commas, filled after parsing
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::string out;
};

/// Exit status for command-line mistakes; library failures exit with their
/// dl_status value (1-10).
constexpr int kUsageError = 64;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

void check(dl_status status) {
  if (status != DL_OK) {
    throw CliError(static_cast<int>(status),
                   std::string(dl_status_string(status)) + ": " + dl_last_error());
  }
}

// RAII holders for the C handles.
struct Network {
  dl_network* p = nullptr;
  ~Network() { dl_network_free(p); }
};
struct Model {
  dl_model* p = nullptr;
  ~Model() { dl_model_free(p); }
};
struct Results {
  dl_results* p = nullptr;
  ~Results() { dl_results_free(p); }
};

dl_prediction_mode prediction_mode(const std::string& name) {
  if (name == "simple") return DL_SIMPLE;
  if (name == "additive") return DL_ADDITIVE;
  if (name == "subtractive") return DL_SUBTRACTIVE;
  throw CliError(DL_ERR_CONFIG, "unknown prediction mode '" + name + "'");
}

dl_train_mode train_mode(const std::string& name) {
  if (name == "semigraph") return DL_SEMIGRAPH;
  if (name == "supervised") return DL_SUPERVISED;
  if (name == "graphemb") return DL_GRAPHEMB;
  throw CliError(DL_ERR_CONFIG, "unknown training mode '" + name + "'");
}

dl_task task_of(const std::string& name) {
  if (name == "formation") return DL_FORMATION;
  if (name == "dissolution") return DL_DISSOLUTION;
  throw CliError(DL_ERR_CONFIG, "unknown task '" + name + "'");
}

dl_train_config train_config(const Settings& s) {
  dl_train_config t = s.train;
  if (s.lambda >= 0.0) t.lambda_f = t.lambda_d = s.lambda;
  return t;
}

void load_network(const Settings& s, Network& net) {
  if (!s.data.empty()) {
    check(dl_network_load(s.data.c_str(), s.symmetrize ? 1 : 0, &net.p));
  } else {
    check(dl_network_synth(&s.synth, &net.p));
  }
}

std::size_t resolve_origin(const Settings& s, const Network& net) {
  if (s.origin >= 0) return static_cast<std::size_t>(s.origin);
  std::size_t snaps = 0;
  check(dl_network_info(net.p, nullptr, &snaps));
  if (snaps < 3) throw CliError(DL_ERR_INDEX, "need at least 3 snapshots");
  return snaps - 2;
}

void print_network(const Network& net) {
  std::size_t nodes = 0, snaps = 0;
  check(dl_network_info(net.p, &nodes, &snaps));
  std::printf("nodes %zu, snapshots %zu\n", nodes, snaps);
  for (std::size_t t = 0; t < snaps; ++t) {
    std::size_t edges = 0;
    check(dl_network_snapshot_edges(net.p, t, &edges));
    if (t == 0) {
      std::printf("  t=%zu edges %zu\n", t, edges);
    } else {
      std::size_t formed = 0, dissolved = 0;
      check(dl_network_transition(net.p, t, &formed, &dissolved));
      std::printf("  t=%zu edges %zu formed %zu dissolved %zu\n", t, edges, formed, dissolved);
    }
  }
}

void print_summary(const Results& res) {
  std::size_t rows = 0, summary = 0;
  check(dl_results_row_count(res.p, &rows));
  check(dl_results_summary_count(res.p, &summary));
  std::printf("%-12s %-11s %6s %-8s %8s %8s %5s\n", "method", "task", "origin", "value", "auc",
              "sd", "runs");
  for (std::size_t k = 0; k < summary; ++k) {
    dl_summary_row r{};
    check(dl_results_summary_row(res.p, k, &r));
    const char* task = r.task == DL_FORMATION ? "formation" : "dissolution";
    if (std::isnan(r.mean_auc)) {
      std::printf("%-12s %-11s %6zu %-8s %8s %8s %5zu\n", r.method, task, r.origin, r.value,
                  "skipped", "-", r.runs);
    } else {
      std::printf("%-12s %-11s %6zu %-8s %8.4f %8.4f %5zu\n", r.method, task, r.origin, r.value,
                  r.mean_auc, r.std_auc, r.runs);
    }
  }
  std::printf("%zu result rows\n", rows);
}

dl_experiment_config experiment_config(const Settings& s) {
  dl_experiment_config c;
  dl_experiment_config_default(&c);
  c.dataset_path = s.data.empty() ? nullptr : s.data.c_str();
  c.symmetrize = s.symmetrize ? 1 : 0;
  c.synth = s.synth;
  c.origin = s.origin;
  c.methods = s.method_list.empty() ? nullptr : s.method_list.c_str();
  c.train = train_config(s);
  c.mode = prediction_mode(s.prediction_mode);
  c.complementary = s.no_complementary ? 0 : 1;
  c.seeds = s.seeds.data();
  c.seed_count = s.seeds.size();
  c.output_dir = s.out.empty() ? nullptr : s.out.c_str();
  return c;
}

void add_shared_options(CLI::App& app, Settings& s) {
  const std::string data = "Data";
  app.add_option("--data", s.data, "Temporal edge list (source,target,time); synthetic data when absent")
      ->group(data);
  app.add_flag("--symmetrize", s.symmetrize, "Treat every row as an undirected link")->group(data);
  app.add_option("--origin,-t", s.origin, "Origin time index t (default: last transition)")
      ->group(data);

  const std::string synth = "Synthetic data";
  app.add_option("--nodes", s.synth.num_nodes, "Node count")->group(synth)->capture_default_str();
  app.add_option("--communities", s.synth.num_communities, "Community count")->group(synth)->capture_default_str();
  app.add_option("--snapshots", s.synth.snapshots, "Snapshot count")->group(synth)->capture_default_str();
  app.add_option("--p-in", s.synth.p_in, "Initial within-community link probability")->group(synth)->capture_default_str();
  app.add_option("--p-out", s.synth.p_out, "Initial between-community link probability")->group(synth)->capture_default_str();
  app.add_option("--rewire-rate", s.synth.rewire_rate, "Fraction of edges rewired per step")->group(synth)->capture_default_str();
  app.add_option("--churn-asymmetry", s.synth.churn_asymmetry, "Probability a new edge stays in its community")->group(synth)->capture_default_str();
  app.add_option("--activity-spread", s.synth.activity_spread, "Log-normal spread of node activity")->group(synth)->capture_default_str();
  app.add_option("--between-dissolve-bias", s.synth.between_dissolve_bias, "Dissolution hazard of between-community edges")->group(synth)->capture_default_str();
  app.add_option("--synth-seed", s.synth.seed, "Generator seed")->group(synth)->capture_default_str();

  const std::string train = "Training";
  app.add_option("--mode", s.train_mode, "semigraph | supervised | graphemb")->group(train)->capture_default_str();
  app.add_option("--d", s.train.d, "Complex embedding dimension")->group(train)->capture_default_str();
  app.add_option("--lambda", s.lambda, "Context weight for both tasks")->group(train);
  app.add_option("--lambda-f", s.train.lambda_f, "Formation context weight")->group(train)->capture_default_str();
  app.add_option("--lambda-d", s.train.lambda_d, "Dissolution context weight")->group(train)->capture_default_str();
  app.add_option("--eta1", s.train.eta1, "Vector learning rate")->group(train)->capture_default_str();
  app.add_option("--eta2", s.train.eta2, "Phase learning rate")->group(train)->capture_default_str();
  app.add_option("--p", s.train.p, "Past transitions used (0 = all)")->group(train)->capture_default_str();
  app.add_option("--epochs", s.train.epochs, "Training epochs")->group(train)->capture_default_str();
  app.add_option("--k-neg", s.train.k_neg, "Negatives per positive")->group(train)->capture_default_str();
  app.add_option("--walks-per-node", s.train.walks_per_node, "Random walks per node")->group(train)->capture_default_str();
  app.add_option("--walk-length", s.train.walk_length, "Random walk length")->group(train)->capture_default_str();
  app.add_option("--window", s.train.window, "Context window")->group(train)->capture_default_str();
  app.add_flag("--directed-walks", s.train.directed_walks, "Walk along out-edges only")->group(train);
  app.add_option("--seed", s.train.seed, "Training seed (train subcommand)")->group(train)->capture_default_str();

  const std::string eval = "Evaluation";
  app.add_option("--prediction-mode", s.prediction_mode, "simple | additive | subtractive")->group(eval)->capture_default_str();
  app.add_flag("--no-complementary", s.no_complementary, "Rank dissolution by the raw heuristic score")->group(eval);
  app.add_option("--methods", s.methods, "Comma-separated methods (default: all)")
      ->group(eval)
      ->delimiter(',');
  app.add_option("--seeds", s.seeds, "Training seeds")->group(eval)->delimiter(',')->capture_default_str();
  app.add_option("--out", s.out, "Output directory for results.csv, summary.csv, manifest.json")->group(eval);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic link prediction with semi-supervised complex embeddings"};
  app.set_version_flag("--version", std::string(dl_version()));
  app.set_config("--config", "", "Flat key=value file; any long option name is a key");
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  dl_synth_config_default(&s.synth);
  dl_train_config_default(&s.train);
  add_shared_options(app, s);

  std::string input, output, model_path, loss_csv, task = "formation", baseline, param;
  std::size_t top_k = 0;
  std::size_t t_start = 1, t_end = 0;
  bool no_leakage_check = false;
  std::vector<double> values;

  auto* ingest = app.add_subcommand("ingest", "Read an edge list, report it and write it normalized");
  ingest->add_option("input", input, "Edge list to read")->required();
  ingest->add_option("--output,-o", output, "Where to write the normalized edge list");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic temporal network");
  synth->add_option("--output,-o", output, "Edge list to write")->required();

  auto* train = app.add_subcommand("train", "Train one model at origin t");
  train->add_option("--model", model_path, "Model file to write")->required();
  train->add_option("--loss-csv", loss_csv, "Per-epoch losses");

  auto* predict = app.add_subcommand("predict", "Write ranked predictions at origin t");
  predict->add_option("--model", model_path, "Trained model");
  predict->add_option("--baseline", baseline, "AA | PA | AA-all | PA-all | LastTime");
  predict->add_option("--task", task, "formation | dissolution")->capture_default_str();
  predict->add_option("--top-k", top_k, "Keep the k best candidates (0 = all)");
  predict->add_option("--output,-o", output, "Predictions CSV")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate methods at one origin");
  evaluate->add_option("--model", model_path, "Evaluate a single trained model instead of the method grid");

  auto* rolling = app.add_subcommand("rolling", "Evaluate at every origin in a range");
  rolling->add_option("--t-start", t_start, "First origin")->capture_default_str();
  rolling->add_option("--t-end", t_end, "Last origin (default: last transition)");
  rolling->add_flag("--no-leakage-check", no_leakage_check, "Skip the truncation equivalence check");

  auto* sweep = app.add_subcommand("sweep", "SemiGraph over a list of d or lambda values");
  sweep->add_option("--param", param, "d | lambda")->required()->check(CLI::IsMember({"d", "lambda"}));
  sweep->add_option("--values", values, "Values to try")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version come through here with exit code 0.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }
  for (const std::string& m : s.methods) {
    if (!s.method_list.empty()) s.method_list += ',';
    s.method_list += m;
  }

  try {
    if (ingest->parsed()) {
      Network net;
      check(dl_network_load(input.c_str(), s.symmetrize ? 1 : 0, &net.p));
      print_network(net);
      if (!output.empty()) check(dl_network_save(net.p, output.c_str()));
    } else if (synth->parsed()) {
      Network net;
      check(dl_network_synth(&s.synth, &net.p));
      print_network(net);
      check(dl_network_save(net.p, output.c_str()));
    } else if (train->parsed()) {
      Network net;
      load_network(s, net);
      const std::size_t t = resolve_origin(s, net);
      const dl_train_config cfg = train_config(s);
      Model model;
      check(dl_train(net.p, t, &cfg, train_mode(s.train_mode),
                     loss_csv.empty() ? nullptr : loss_csv.c_str(), &model.p));
      check(dl_model_save(model.p, model_path.c_str()));
      std::printf("trained %s at t=%zu, wrote %s\n", s.train_mode.c_str(), t, model_path.c_str());
    } else if (predict->parsed()) {
      if (model_path.empty() == baseline.empty()) {
        throw CliError(DL_ERR_CONFIG, "give exactly one of --model or --baseline");
      }
      Network net;
      load_network(s, net);
      const std::size_t t = resolve_origin(s, net);
      if (!baseline.empty()) {
        check(dl_baseline_write(net.p, t, task_of(task), baseline.c_str(),
                                s.no_complementary ? 0 : 1, top_k, output.c_str()));
      } else {
        Model model;
        check(dl_model_load(model_path.c_str(), &model.p));
        check(dl_predict_write(model.p, net.p, t, task_of(task), prediction_mode(s.prediction_mode),
                               top_k, output.c_str()));
      }
      std::printf("wrote %s\n", output.c_str());
    } else if (evaluate->parsed()) {
      if (!model_path.empty()) {
        Network net;
        load_network(s, net);
        const std::size_t t = resolve_origin(s, net);
        Model model;
        check(dl_model_load(model_path.c_str(), &model.p));
        for (dl_task k : {DL_FORMATION, DL_DISSOLUTION}) {
          double auc = 0.0;
          std::size_t pos = 0, neg = 0;
          check(dl_evaluate_model(model.p, net.p, t, k, prediction_mode(s.prediction_mode), &auc,
                                  &pos, &neg));
          std::printf("%-11s t=%zu auc %.4f (%zu positives, %zu negatives)\n",
                      k == DL_FORMATION ? "formation" : "dissolution", t, auc, pos, neg);
        }
      } else {
        const dl_experiment_config cfg = experiment_config(s);
        Results res;
        check(dl_run_experiment(&cfg, &res.p));
        print_summary(res);
      }
    } else if (rolling->parsed()) {
      const dl_experiment_config cfg = experiment_config(s);
      if (t_end == 0) {
        Network net;
        load_network(s, net);
        t_end = resolve_origin(Settings{}, net);
      }
      Results res;
      check(dl_run_rolling(&cfg, t_start, t_end, no_leakage_check ? 0 : 1, &res.p));
      print_summary(res);
      int ok = 1;
      check(dl_results_leakage_ok(res.p, &ok));
      if (!no_leakage_check) std::printf("leakage check: %s\n", ok ? "identical" : "MISMATCH");
      if (!ok) return 1;
    } else if (sweep->parsed()) {
      const dl_experiment_config cfg = experiment_config(s);
      Results res;
      check(dl_run_sweep(&cfg, param == "d" ? DL_SWEEP_D : DL_SWEEP_LAMBDA, values.data(),
                         values.size(), &res.p));
      print_summary(res);
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "dynlink: %s\n", e.what());
    return e.code();
  }
  return 0;
}
