#include "dynlink/dynlink.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dynlink/baselines.hpp"
#include "dynlink/error.hpp"
#include "dynlink/evaluation.hpp"
#include "dynlink/harness.hpp"
#include "dynlink/prediction.hpp"
#include "dynlink/synth.hpp"
#include "dynlink/temporal_graph.hpp"
#include "dynlink/training.hpp"

struct dl_network {
  dynlink::TemporalNetwork net;
};

struct dl_model {
  dynlink::EmbeddingState state;
};

struct dl_results {
  dynlink::ExperimentResult result;
};

namespace {

thread_local std::string g_last_error;

dl_status fail(dl_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

dl_status from_code(dynlink::ErrorCode code) {
  using dynlink::ErrorCode;
  switch (code) {
    case ErrorCode::parse: return DL_ERR_PARSE;
    case ErrorCode::empty_input: return DL_ERR_EMPTY_INPUT;
    case ErrorCode::index: return DL_ERR_INDEX;
    case ErrorCode::contract: return DL_ERR_CONTRACT;
    case ErrorCode::degenerate_task: return DL_ERR_DEGENERATE_TASK;
    case ErrorCode::diverged: return DL_ERR_DIVERGED;
    case ErrorCode::io: return DL_ERR_IO;
    case ErrorCode::config: return DL_ERR_CONFIG;
  }
  return DL_ERR_INTERNAL;
}

struct InvalidArgument : std::exception {
  std::string msg;
  explicit InvalidArgument(std::string m) : msg(std::move(m)) {}
  const char* what() const noexcept override { return msg.c_str(); }
};

/// Runs `fn` and converts any exception into a status; nothing escapes the
/// C boundary.
template <class Fn>
dl_status guard(Fn&& fn) noexcept {
  try {
    fn();
    return DL_OK;
  } catch (const InvalidArgument& e) {
    return fail(DL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const dynlink::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DL_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw InvalidArgument(std::string(name) + " is NULL");
}

dynlink::Task task_of(dl_task task) {
  switch (task) {
    case DL_FORMATION: return dynlink::Task::formation;
    case DL_DISSOLUTION: return dynlink::Task::dissolution;
  }
  throw InvalidArgument("unknown task value");
}

dynlink::PredictionMode mode_of(dl_prediction_mode mode) {
  switch (mode) {
    case DL_SIMPLE: return dynlink::PredictionMode::simple;
    case DL_ADDITIVE: return dynlink::PredictionMode::additive;
    case DL_SUBTRACTIVE: return dynlink::PredictionMode::subtractive;
  }
  throw InvalidArgument("unknown prediction mode value");
}

dynlink::TrainMode train_mode_of(dl_train_mode mode) {
  switch (mode) {
    case DL_SEMIGRAPH: return dynlink::TrainMode::semigraph;
    case DL_SUPERVISED: return dynlink::TrainMode::supervised_only;
    case DL_GRAPHEMB: return dynlink::TrainMode::embedding_only;
  }
  throw InvalidArgument("unknown training mode value");
}

dynlink::SynthConfig synth_of(const dl_synth_config& c) {
  dynlink::SynthConfig s;
  s.num_nodes = c.num_nodes;
  s.num_communities = c.num_communities;
  s.snapshots = c.snapshots;
  s.p_in = c.p_in;
  s.p_out = c.p_out;
  s.rewire_rate = c.rewire_rate;
  s.churn_asymmetry = c.churn_asymmetry;
  s.activity_spread = c.activity_spread;
  s.between_dissolve_bias = c.between_dissolve_bias;
  s.seed = c.seed;
  return s;
}

dynlink::TrainConfig train_of(const dl_train_config& c) {
  dynlink::TrainConfig t;
  t.d = c.d;
  t.lambda_f = c.lambda_f;
  t.lambda_d = c.lambda_d;
  t.eta1 = c.eta1;
  t.eta2 = c.eta2;
  t.p = c.p;
  t.epochs = c.epochs;
  t.k_neg = c.k_neg;
  t.walk.walks_per_node = c.walks_per_node;
  t.walk.walk_length = c.walk_length;
  t.walk.window = c.window;
  t.walk.directed = c.directed_walks != 0;
  t.seed = c.seed;
  return t;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

dynlink::ExperimentConfig experiment_of(const dl_experiment_config& c) {
  dynlink::ExperimentConfig x;
  if (c.dataset_path != nullptr) x.dataset_path = c.dataset_path;
  x.symmetrize = c.symmetrize != 0;
  x.synth = synth_of(c.synth);
  if (c.origin >= 0) x.origin = static_cast<dynlink::TimeIndex>(c.origin);
  if (c.methods != nullptr && *c.methods != '\0') {
    x.methods.clear();
    for (const std::string& name : split_list(c.methods)) x.methods.push_back(dynlink::parse_method(name));
  }
  x.train = train_of(c.train);
  x.mode = mode_of(c.mode);
  x.complementary = c.complementary != 0;
  if (c.seeds != nullptr) x.seeds.assign(c.seeds, c.seeds + c.seed_count);
  if (c.output_dir != nullptr) x.output_dir = c.output_dir;
  return x;
}

void write_ranked(std::vector<dynlink::RankedPrediction> preds, const dynlink::TemporalNetwork& net,
                  dynlink::TimeIndex t, std::size_t top_k, const char* path) {
  dynlink::attach_labels(preds, net, t);
  if (top_k > 0 && preds.size() > top_k) preds.resize(top_k);
  std::ofstream out(path);
  if (!out) throw dynlink::IoError(std::string("cannot write ") + path);
  dynlink::write_predictions_csv(out, preds, net);
  if (!out) throw dynlink::IoError(std::string("write failed: ") + path);
}

void store_auc(const dynlink::AucResult& r, double* auc, std::size_t* pos, std::size_t* neg) {
  *auc = r.auc;
  if (pos != nullptr) *pos = r.positives;
  if (neg != nullptr) *neg = r.negatives;
}

void finish_experiment(const dynlink::ExperimentConfig& cfg, const char* command,
                            dynlink::ExperimentResult result, dl_results** out) {
  if (!cfg.output_dir.empty()) dynlink::write_outputs(cfg, command, result);
  *out = new dl_results{std::move(result)};
}

}  // namespace

extern "C" {

const char* dl_version(void) { return dynlink::version(); }

const char* dl_last_error(void) { return g_last_error.c_str(); }

const char* dl_status_string(dl_status status) {
  switch (status) {
    case DL_OK: return "ok";
    case DL_ERR_PARSE: return "parse error";
    case DL_ERR_EMPTY_INPUT: return "empty input";
    case DL_ERR_INDEX: return "index out of range";
    case DL_ERR_CONTRACT: return "contract violation";
    case DL_ERR_DEGENERATE_TASK: return "degenerate task";
    case DL_ERR_DIVERGED: return "training diverged";
    case DL_ERR_IO: return "i/o error";
    case DL_ERR_CONFIG: return "configuration error";
    case DL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void dl_synth_config_default(dl_synth_config* cfg) {
  if (cfg == nullptr) return;
  const dynlink::SynthConfig s;
  *cfg = {s.num_nodes,       s.num_communities, s.snapshots,
          s.p_in,            s.p_out,           s.rewire_rate,
          s.churn_asymmetry, s.activity_spread, s.between_dissolve_bias,
          s.seed};
}

void dl_train_config_default(dl_train_config* cfg) {
  if (cfg == nullptr) return;
  const dynlink::TrainConfig t;
  *cfg = {t.d,     t.lambda_f, t.lambda_d,
          t.eta1,  t.eta2,     t.p,
          t.epochs, t.k_neg,   t.walk.walks_per_node,
          t.walk.walk_length, t.walk.window, t.walk.directed ? 1 : 0,
          t.seed};
}

void dl_experiment_config_default(dl_experiment_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = {};
  dl_synth_config_default(&cfg->synth);
  dl_train_config_default(&cfg->train);
  cfg->origin = -1;
  cfg->mode = DL_ADDITIVE;
  cfg->complementary = 1;
}

dl_status dl_network_load(const char* path, int symmetrize, dl_network** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new dl_network{dynlink::load_edge_list(path, dynlink::IngestOptions{symmetrize != 0})};
  });
}

dl_status dl_network_synth(const dl_synth_config* cfg, dl_network** out) {
  return guard([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = new dl_network{dynlink::generate(synth_of(*cfg))};
  });
}

dl_status dl_network_save(const dl_network* net, const char* path) {
  return guard([&] {
    need(net, "net");
    need(path, "path");
    dynlink::save_edge_list(path, net->net);
  });
}

dl_status dl_network_info(const dl_network* net, size_t* nodes, size_t* snapshots) {
  return guard([&] {
    need(net, "net");
    if (nodes != nullptr) *nodes = net->net.node_count();
    if (snapshots != nullptr) *snapshots = net->net.snapshot_count();
  });
}

dl_status dl_network_snapshot_edges(const dl_network* net, size_t t, size_t* edges) {
  return guard([&] {
    need(net, "net");
    need(edges, "edges");
    *edges = net->net.snapshot(t).size();
  });
}

dl_status dl_network_transition(const dl_network* net, size_t t, size_t* formed,
                                size_t* dissolved) {
  return guard([&] {
    need(net, "net");
    const dynlink::TransitionPair tp = dynlink::derive_transition(net->net, t);
    if (formed != nullptr) *formed = tp.formed.size();
    if (dissolved != nullptr) *dissolved = tp.dissolved.size();
  });
}

void dl_network_free(dl_network* net) { delete net; }

dl_status dl_train(const dl_network* net, size_t t, const dl_train_config* cfg,
                   dl_train_mode mode, const char* loss_csv, dl_model** out) {
  return guard([&] {
    need(net, "net");
    need(cfg, "cfg");
    need(out, "out");
    dynlink::TrainResult res = dynlink::train(net->net, t, train_of(*cfg), train_mode_of(mode));
    if (loss_csv != nullptr && *loss_csv != '\0') {
      std::ofstream f(loss_csv);
      if (!f) throw dynlink::IoError(std::string("cannot write ") + loss_csv);
      res.report.write_csv(f);
    }
    *out = new dl_model{std::move(res.state)};
  });
}

dl_status dl_model_save(const dl_model* model, const char* path) {
  return guard([&] {
    need(model, "model");
    need(path, "path");
    dynlink::save_model(path, model->state);
  });
}

dl_status dl_model_load(const char* path, dl_model** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new dl_model{dynlink::load_model(path)};
  });
}

dl_status dl_model_info(const dl_model* model, size_t* d, size_t* nodes) {
  return guard([&] {
    need(model, "model");
    if (d != nullptr) *d = model->state.d;
    if (nodes != nullptr) *nodes = model->state.num_nodes;
  });
}

void dl_model_free(dl_model* model) { delete model; }

dl_status dl_predict_write(const dl_model* model, const dl_network* net, size_t t, dl_task task,
                           dl_prediction_mode mode, size_t top_k, const char* path) {
  return guard([&] {
    need(model, "model");
    need(net, "net");
    need(path, "path");
    write_ranked(dynlink::rank_predictions(model->state, net->net, t, task_of(task), mode_of(mode)),
                 net->net, t, top_k, path);
  });
}

dl_status dl_baseline_write(const dl_network* net, size_t t, dl_task task, const char* kind,
                            int complementary, size_t top_k, const char* path) {
  return guard([&] {
    need(net, "net");
    need(kind, "kind");
    need(path, "path");
    write_ranked(dynlink::baseline_rank(net->net, t, task_of(task), dynlink::parse_baseline_kind(kind),
                                        complementary != 0),
                 net->net, t, top_k, path);
  });
}

dl_status dl_evaluate_model(const dl_model* model, const dl_network* net, size_t t, dl_task task,
                            dl_prediction_mode mode, double* auc, size_t* positives,
                            size_t* negatives) {
  return guard([&] {
    need(model, "model");
    need(net, "net");
    need(auc, "auc");
    const auto preds =
        dynlink::rank_predictions(model->state, net->net, t, task_of(task), mode_of(mode));
    store_auc(dynlink::evaluate_ranked(preds, net->net, t), auc, positives, negatives);
  });
}

dl_status dl_evaluate_baseline(const dl_network* net, size_t t, dl_task task, const char* kind,
                               int complementary, double* auc, size_t* positives,
                               size_t* negatives) {
  return guard([&] {
    need(net, "net");
    need(kind, "kind");
    need(auc, "auc");
    const auto preds = dynlink::baseline_rank(net->net, t, task_of(task),
                                              dynlink::parse_baseline_kind(kind), complementary != 0);
    store_auc(dynlink::evaluate_ranked(preds, net->net, t), auc, positives, negatives);
  });
}

dl_status dl_run_experiment(const dl_experiment_config* cfg, dl_results** out) {
  return guard([&] {
    need(cfg, "cfg");
    need(out, "out");
    const dynlink::ExperimentConfig x = experiment_of(*cfg);
    finish_experiment(x, "evaluate", dynlink::run_experiment(x), out);
  });
}

dl_status dl_run_rolling(const dl_experiment_config* cfg, size_t t_start, size_t t_end,
                         int check_leakage, dl_results** out) {
  return guard([&] {
    need(cfg, "cfg");
    need(out, "out");
    const dynlink::ExperimentConfig x = experiment_of(*cfg);
    x.validate();
    const dynlink::TemporalNetwork net = dynlink::load_dataset(x);
    finish_experiment(x, "rolling", dynlink::run_rolling(x, net, t_start, t_end, check_leakage != 0),
                      out);
  });
}

dl_status dl_run_sweep(const dl_experiment_config* cfg, dl_sweep_param param, const double* values,
                       size_t count, dl_results** out) {
  return guard([&] {
    need(cfg, "cfg");
    need(values, "values");
    need(out, "out");
    if (param != DL_SWEEP_D && param != DL_SWEEP_LAMBDA) throw InvalidArgument("unknown sweep parameter");
    const dynlink::ExperimentConfig x = experiment_of(*cfg);
    x.validate();
    const dynlink::TemporalNetwork net = dynlink::load_dataset(x);
    const auto p = param == DL_SWEEP_D ? dynlink::SweepParam::d : dynlink::SweepParam::lambda;
    finish_experiment(x, "sweep", dynlink::run_sweep(x, net, p, {values, values + count}), out);
  });
}

dl_status dl_results_row_count(const dl_results* res, size_t* rows) {
  return guard([&] {
    need(res, "res");
    need(rows, "rows");
    *rows = res->result.rows.size();
  });
}

dl_status dl_results_summary_count(const dl_results* res, size_t* rows) {
  return guard([&] {
    need(res, "res");
    need(rows, "rows");
    *rows = res->result.summary.size();
  });
}

dl_status dl_results_summary_row(const dl_results* res, size_t index, dl_summary_row* row) {
  return guard([&] {
    need(res, "res");
    need(row, "row");
    if (index >= res->result.summary.size()) throw dynlink::IndexError("summary row out of range");
    const dynlink::SummaryRow& s = res->result.summary[index];
    row->dataset = s.dataset.c_str();
    row->method = s.method.c_str();
    row->task = s.task == dynlink::Task::formation ? DL_FORMATION : DL_DISSOLUTION;
    row->origin = s.origin;
    row->param = s.param.c_str();
    row->value = s.value.c_str();
    row->mean_auc = s.mean_auc.value_or(std::numeric_limits<double>::quiet_NaN());
    row->std_auc = s.std_auc;
    row->runs = s.runs;
  });
}

dl_status dl_results_leakage_ok(const dl_results* res, int* ok) {
  return guard([&] {
    need(res, "res");
    need(ok, "ok");
    int all = 1;
    for (const auto& c : res->result.leakage) all = all && c.identical;
    *ok = all;
  });
}

dl_status dl_results_write_csv(const dl_results* res, const char* path) {
  return guard([&] {
    need(res, "res");
    need(path, "path");
    std::ofstream out(path);
    if (!out) throw dynlink::IoError(std::string("cannot write ") + path);
    dynlink::write_results_csv(out, res->result.rows);
    if (!out) throw dynlink::IoError(std::string("write failed: ") + path);
  });
}

void dl_results_free(dl_results* res) { delete res; }

}  // extern "C"
