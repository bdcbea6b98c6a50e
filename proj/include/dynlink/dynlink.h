/* C interface to the dynlink library.
 *
 * Every function returns a dl_status. On failure the out-parameters are left
 * untouched and dl_last_error() describes the problem; the message is
 * thread-local and valid until the next failing call on the same thread.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function (NULL is accepted and ignored). */
#ifndef DYNLINK_DYNLINK_H
#define DYNLINK_DYNLINK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DYNLINK_BUILDING)
#    define DL_API __declspec(dllexport)
#  else
#    define DL_API __declspec(dllimport)
#  endif
#else
#  define DL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dl_status {
  DL_OK = 0,
  DL_ERR_PARSE = 1,
  DL_ERR_EMPTY_INPUT = 2,
  DL_ERR_INDEX = 3,
  DL_ERR_CONTRACT = 4,
  DL_ERR_DEGENERATE_TASK = 5,
  DL_ERR_DIVERGED = 6,
  DL_ERR_IO = 7,
  DL_ERR_CONFIG = 8,
  DL_ERR_INVALID_ARGUMENT = 9,
  DL_ERR_INTERNAL = 10
} dl_status;

typedef enum dl_train_mode { DL_SEMIGRAPH = 0, DL_SUPERVISED = 1, DL_GRAPHEMB = 2 } dl_train_mode;
typedef enum dl_task { DL_FORMATION = 0, DL_DISSOLUTION = 1 } dl_task;
typedef enum dl_prediction_mode { DL_SIMPLE = 0, DL_ADDITIVE = 1, DL_SUBTRACTIVE = 2 } dl_prediction_mode;
typedef enum dl_sweep_param { DL_SWEEP_D = 0, DL_SWEEP_LAMBDA = 1 } dl_sweep_param;

typedef struct dl_network dl_network;
typedef struct dl_model dl_model;
typedef struct dl_results dl_results;

typedef struct dl_synth_config {
  size_t num_nodes;
  size_t num_communities;
  size_t snapshots;
  double p_in;
  double p_out;
  double rewire_rate;
  double churn_asymmetry;
  double activity_spread;
  double between_dissolve_bias;
  uint64_t seed;
} dl_synth_config;

typedef struct dl_train_config {
  size_t d;
  double lambda_f;
  double lambda_d;
  double eta1;
  double eta2;
  size_t p; /* past window, 0 = all transitions up to t */
  size_t epochs;
  size_t k_neg;
  size_t walks_per_node;
  size_t walk_length;
  size_t window;
  int directed_walks;
  uint64_t seed;
} dl_train_config;

typedef struct dl_experiment_config {
  const char* dataset_path; /* NULL or "" = synthetic data from `synth` */
  int symmetrize;
  dl_synth_config synth;
  long origin;         /* -1 = last transition */
  const char* methods; /* comma separated; NULL or "" = all */
  dl_train_config train;
  dl_prediction_mode mode;
  int complementary;
  const uint64_t* seeds; /* NULL = 1..5 */
  size_t seed_count;
  const char* output_dir; /* NULL = do not write files */
} dl_experiment_config;

typedef struct dl_summary_row {
  const char* dataset;
  const char* method;
  dl_task task;
  size_t origin;
  const char* param;
  const char* value;
  double mean_auc; /* NaN when every seed was skipped */
  double std_auc;
  size_t runs;
} dl_summary_row;

DL_API const char* dl_version(void);
DL_API const char* dl_last_error(void);
DL_API const char* dl_status_string(dl_status status);

DL_API void dl_synth_config_default(dl_synth_config* cfg);
DL_API void dl_train_config_default(dl_train_config* cfg);
DL_API void dl_experiment_config_default(dl_experiment_config* cfg);

/* Networks */
DL_API dl_status dl_network_load(const char* path, int symmetrize, dl_network** out);
DL_API dl_status dl_network_synth(const dl_synth_config* cfg, dl_network** out);
DL_API dl_status dl_network_save(const dl_network* net, const char* path);
DL_API dl_status dl_network_info(const dl_network* net, size_t* nodes, size_t* snapshots);
DL_API dl_status dl_network_snapshot_edges(const dl_network* net, size_t t, size_t* edges);
/* Sizes of the formed and dissolved sets of the transition into t. */
DL_API dl_status dl_network_transition(const dl_network* net, size_t t, size_t* formed,
                                       size_t* dissolved);
DL_API void dl_network_free(dl_network* net);

/* Models. loss_csv may be NULL; otherwise the per-epoch losses go there. */
DL_API dl_status dl_train(const dl_network* net, size_t t, const dl_train_config* cfg,
                          dl_train_mode mode, const char* loss_csv, dl_model** out);
DL_API dl_status dl_model_save(const dl_model* model, const char* path);
DL_API dl_status dl_model_load(const char* path, dl_model** out);
DL_API dl_status dl_model_info(const dl_model* model, size_t* d, size_t* nodes);
DL_API void dl_model_free(dl_model* model);

/* Ranked predictions as CSV (task,i,j,score,label); label is filled when
 * t+1 exists. top_k = 0 writes every candidate. */
DL_API dl_status dl_predict_write(const dl_model* model, const dl_network* net, size_t t,
                                  dl_task task, dl_prediction_mode mode, size_t top_k,
                                  const char* path);
/* kind: AA, PA, AA-all, PA-all or LastTime. */
DL_API dl_status dl_baseline_write(const dl_network* net, size_t t, dl_task task,
                                   const char* kind, int complementary, size_t top_k,
                                   const char* path);

/* AUC of the ranking at origin t against the transition into t+1. */
DL_API dl_status dl_evaluate_model(const dl_model* model, const dl_network* net, size_t t,
                                   dl_task task, dl_prediction_mode mode, double* auc,
                                   size_t* positives, size_t* negatives);
DL_API dl_status dl_evaluate_baseline(const dl_network* net, size_t t, dl_task task,
                                      const char* kind, int complementary, double* auc,
                                      size_t* positives, size_t* negatives);

/* Experiments. When cfg->output_dir is set, results.csv, summary.csv and
 * manifest.json are written there. */
DL_API dl_status dl_run_experiment(const dl_experiment_config* cfg, dl_results** out);
DL_API dl_status dl_run_rolling(const dl_experiment_config* cfg, size_t t_start, size_t t_end,
                                int check_leakage, dl_results** out);
DL_API dl_status dl_run_sweep(const dl_experiment_config* cfg, dl_sweep_param param,
                              const double* values, size_t count, dl_results** out);

DL_API dl_status dl_results_row_count(const dl_results* res, size_t* rows);
DL_API dl_status dl_results_summary_count(const dl_results* res, size_t* rows);
/* Strings in `row` stay valid while `res` lives. */
DL_API dl_status dl_results_summary_row(const dl_results* res, size_t index, dl_summary_row* row);
/* 1 when every leakage check passed (or none ran), else 0. */
DL_API dl_status dl_results_leakage_ok(const dl_results* res, int* ok);
DL_API dl_status dl_results_write_csv(const dl_results* res, const char* path);
DL_API void dl_results_free(dl_results* res);

#ifdef __cplusplus
}
#endif

#endif
