#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dynlink/error.hpp"
#include "dynlink/harness.hpp"

namespace dynlink {
namespace {

ExperimentConfig quick() {
  ExperimentConfig c;
  c.synth.num_nodes = 40;
  c.synth.num_communities = 2;
  c.synth.snapshots = 5;
  c.synth.p_in = 0.2;
  c.synth.p_out = 0.02;
  c.train.epochs = 2;
  c.train.walk.walks_per_node = 2;
  c.train.walk.walk_length = 10;
  c.seeds = {1, 2};
  return c;
}

std::vector<std::optional<double>> aucs(const std::vector<ResultRow>& rows) {
  std::vector<std::optional<double>> out;
  for (const ResultRow& r : rows) out.push_back(r.auc);
  return out;
}

TEST(Harness, GridHasOneRowPerMethodTaskSeed) {
  ExperimentConfig c = quick();
  c.methods = {Method::semigraph, Method::aa, Method::last_time};
  c.seeds = {1, 2, 3};
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.rows.size(), 3u * 2u * 3u);
  EXPECT_EQ(r.summary.size(), 3u * 2u);
  const TimeIndex last = c.synth.snapshots - 2;
  for (const ResultRow& row : r.rows) {
    EXPECT_EQ(row.origin, last);
    EXPECT_EQ(row.dataset, "synth-n40-s1");
    EXPECT_EQ(row.config_hash.size(), 16u);
    ASSERT_TRUE(row.auc.has_value()) << row.method << " " << row.note;
    EXPECT_GE(*row.auc, 0.0);
    EXPECT_LE(*row.auc, 1.0);
    EXPECT_GT(row.positives, 0u);
  }
  for (const SummaryRow& s : r.summary) EXPECT_EQ(s.runs, 3u);
}

TEST(Harness, BaselineRowsAreSeedIndependent) {
  ExperimentConfig c = quick();
  c.methods = {Method::pa};
  c.seeds = {7};
  const ExperimentResult a = run_experiment(c);
  ASSERT_EQ(a.rows.size(), 2u);
  EXPECT_EQ(a.rows, run_experiment(c).rows);
  c.seeds = {7, 8, 9};
  const ExperimentResult b = run_experiment(c);
  for (const ResultRow& row : b.rows) {
    EXPECT_EQ(row.auc, row.task == Task::formation ? a.rows[0].auc : a.rows[1].auc);
  }
  for (const SummaryRow& s : b.summary) EXPECT_EQ(s.std_auc, 0.0);
}

TEST(Harness, SameConfigReproducesRows) {
  ExperimentConfig c = quick();
  c.methods = {Method::semigraph, Method::graphemb};
  EXPECT_EQ(run_experiment(c).rows, run_experiment(c).rows);
}

TEST(Harness, ZeroLambdaSweepMatchesSupervised) {
  ExperimentConfig c = quick();
  const TemporalNetwork net = load_dataset(c);
  const ExperimentResult sweep = run_sweep(c, net, SweepParam::lambda, {0.0});
  c.methods = {Method::supervised};
  const ExperimentResult sup = run_experiment(c, net);
  EXPECT_EQ(aucs(sweep.rows), aucs(sup.rows));
  for (const ResultRow& row : sweep.rows) {
    EXPECT_EQ(row.param, "lambda");
    EXPECT_EQ(row.value, "0");
    EXPECT_EQ(row.method, "semigraph");
  }
}

TEST(Harness, SweepAtDefaultMatchesPlainRun) {
  ExperimentConfig c = quick();
  const TemporalNetwork net = load_dataset(c);
  const ExperimentResult sweep =
      run_sweep(c, net, SweepParam::d, {static_cast<double>(c.train.d), 2.0});
  c.methods = {Method::semigraph};
  const ExperimentResult plain = run_experiment(c, net);
  ASSERT_EQ(sweep.rows.size(), 2 * plain.rows.size());
  for (std::size_t k = 0; k < plain.rows.size(); ++k) {
    EXPECT_EQ(sweep.rows[k].auc, plain.rows[k].auc);
    EXPECT_EQ(sweep.rows[k].config_hash, plain.rows[k].config_hash);
  }
  EXPECT_NE(sweep.rows.back().config_hash, plain.rows.back().config_hash);
  EXPECT_THROW(run_sweep(c, net, SweepParam::d, {2.5}), ConfigError);
  EXPECT_THROW(run_sweep(c, net, SweepParam::lambda, {}), ConfigError);
}

TEST(Harness, SingleOriginRollingMatchesExperiment) {
  ExperimentConfig c = quick();
  c.methods = {Method::semigraph, Method::aa_all};
  const TemporalNetwork net = load_dataset(c);
  c.origin = 2;
  const ExperimentResult one = run_experiment(c, net);
  const ExperimentResult roll = run_rolling(c, net, 2, 2);
  EXPECT_EQ(roll.rows, one.rows);
  ASSERT_EQ(roll.leakage.size(), 1u);
  EXPECT_TRUE(roll.leakage[0].identical);
}

TEST(Harness, RollingChecksEveryOriginForLeakage) {
  ExperimentConfig c = quick();
  c.methods = {Method::semigraph, Method::pa_all, Method::last_time};
  c.seeds = {3};
  const TemporalNetwork net = load_dataset(c);
  const ExperimentResult r = run_rolling(c, net, 1, 3);
  ASSERT_EQ(r.leakage.size(), 3u);
  for (const LeakageCheck& lc : r.leakage) EXPECT_TRUE(lc.identical) << "origin " << lc.origin;
  EXPECT_EQ(r.rows.size(), 3u * 3u * 2u);
  // The cumulative baseline sees a growing history, so its rows move with t.
  std::set<double> pa_all;
  for (const ResultRow& row : r.rows) {
    if (row.method == "PA-all" && row.task == Task::formation) pa_all.insert(*row.auc);
  }
  EXPECT_EQ(pa_all.size(), 3u);
  EXPECT_THROW(run_rolling(c, net, 3, 1), ConfigError);
}

TEST(Harness, OriginMustHaveAHistoryAndAFuture) {
  ExperimentConfig c = quick();
  c.methods = {Method::aa};
  c.origin = 0;
  EXPECT_THROW(run_experiment(c), IndexError);
  c.origin = c.synth.snapshots - 1;
  EXPECT_THROW(run_experiment(c), IndexError);
}

TEST(Harness, DegenerateCellIsSkippedNotFatal) {
  // Nothing dissolves between t=1 and t=2, so the dissolution task is empty.
  const TemporalNetwork net(4, {{{0, 1}}, {{0, 1}, {1, 2}}, {{0, 1}, {1, 2}, {2, 3}}});
  ExperimentConfig c = quick();
  c.methods = {Method::aa, Method::supervised};
  c.seeds = {1};
  const ExperimentResult r = run_experiment(c, net);
  ASSERT_EQ(r.rows.size(), 4u);
  for (const ResultRow& row : r.rows) {
    if (row.task == Task::dissolution) {
      EXPECT_FALSE(row.auc.has_value());
      EXPECT_EQ(row.note.rfind("skipped: ", 0), 0u) << row.note;
    } else {
      EXPECT_TRUE(row.auc.has_value()) << row.note;
    }
  }
  for (const SummaryRow& s : r.summary) {
    if (s.task == Task::dissolution) {
      EXPECT_FALSE(s.mean_auc.has_value());
      EXPECT_EQ(s.runs, 0u);
    }
  }
}

TEST(Harness, ConfigHashTracksEverySetting) {
  const ExperimentConfig base = quick();
  EXPECT_EQ(config_hash(base), config_hash(quick()));
  auto differs = [&](auto mutate) {
    ExperimentConfig c = quick();
    mutate(c);
    return config_hash(c) != config_hash(base);
  };
  EXPECT_TRUE(differs([](ExperimentConfig& c) { c.train.eta1 *= 2; }));
  EXPECT_TRUE(differs([](ExperimentConfig& c) { c.synth.seed = 9; }));
  EXPECT_TRUE(differs([](ExperimentConfig& c) { c.seeds = {1}; }));
  EXPECT_TRUE(differs([](ExperimentConfig& c) { c.mode = PredictionMode::simple; }));
  EXPECT_TRUE(differs([](ExperimentConfig& c) { c.complementary = false; }));
  EXPECT_TRUE(differs([](ExperimentConfig& c) { c.methods = {Method::aa}; }));
  EXPECT_FALSE(differs([](ExperimentConfig& c) { c.output_dir = "elsewhere"; }));
}

TEST(Harness, SummaryUsesSampleStandardDeviation) {
  std::vector<ResultRow> rows(3);
  const double v[] = {0.5, 0.7, 0.9};
  for (int k = 0; k < 3; ++k) {
    rows[k].method = "X";
    rows[k].auc = v[k];
  }
  rows.push_back(rows[0]);
  rows.back().auc.reset();
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(*s[0].mean_auc, 0.7, 1e-15);
  EXPECT_NEAR(s[0].std_auc, 0.2, 1e-15);
  EXPECT_EQ(s[0].runs, 3u);
}

TEST(Harness, CsvSchemaAndQuoting) {
  ResultRow row;
  row.dataset = "a,b";
  row.method = "AA";
  row.origin = 3;
  row.auc = 0.75;
  row.positives = 2;
  row.negatives = 5;
  row.seed = 1;
  row.note = "";
  row.config_hash = "0123456789abcdef";
  std::ostringstream out;
  write_results_csv(out, {row});
  EXPECT_EQ(out.str(),
            "dataset,method,task,origin_t,auc,positives,negatives,seed,param,value,note,config_hash\n"
            "\"a,b\",AA,formation,3,0.75,2,5,1,,,,0123456789abcdef\n");
  std::ostringstream sum;
  write_summary_csv(sum, summarize({row}));
  EXPECT_EQ(sum.str(),
            "dataset,method,task,origin_t,param,value,mean_auc,std_auc,runs\n"
            "\"a,b\",AA,formation,3,,,0.75,0,1\n");
}

TEST(Harness, WritesOutputsWithManifest) {
  const auto dir = std::filesystem::temp_directory_path() / "dynlink_harness_out";
  std::filesystem::remove_all(dir);
  ExperimentConfig c = quick();
  c.methods = {Method::aa};
  c.output_dir = dir.string();
  const ExperimentResult r = run_experiment(c);
  write_outputs(c, "evaluate", r);
  EXPECT_TRUE(std::filesystem::exists(dir / "results.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.csv"));
  std::ifstream in(dir / "manifest.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["tool"], "dynlink");
  EXPECT_EQ(j["command"], "evaluate");
  EXPECT_EQ(j["rows"], r.rows.size());
  EXPECT_EQ(j["seeds"], nlohmann::json({1, 2}));
  EXPECT_EQ(j["config_hash"], config_hash(c));
  EXPECT_EQ(j["row_config_hashes"], nlohmann::json({r.rows[0].config_hash}));
  EXPECT_EQ(j["config"]["methods"], "AA");
  EXPECT_FALSE(j.contains("leakage_check"));
  std::filesystem::remove_all(dir);
}

TEST(Harness, MethodNamesAndValidation) {
  for (Method m : all_methods()) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(parse_method("LL"), Method::last_time);
  EXPECT_THROW(parse_method("Katz"), ConfigError);
  EXPECT_TRUE(is_learned(Method::graphemb));
  EXPECT_FALSE(is_learned(Method::pa_all));
  ExperimentConfig c = quick();
  c.seeds.clear();
  EXPECT_THROW(c.validate(), ConfigError);
  c = quick();
  c.methods.clear();
  EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace dynlink
