#include <sstream>

#include <gtest/gtest.h>

#include "awake/errors.hpp"
#include "awake/rng.hpp"
#include "experiment.hpp"

namespace awake::bench {
namespace {

std::string csv_of(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_csv(out, run_experiment(cfg), false);
  return out.str();
}

TEST(Experiment, CsvIsByteIdenticalAcrossRunsAndThreads) {
  ExperimentConfig cfg;
  cfg.algorithm = "awake_mis";
  cfg.n = {1024};
  cfg.trials = 3;
  cfg.seed = 7;
  const std::string first = csv_of(cfg);
  EXPECT_EQ(first, csv_of(cfg));
  cfg.threads = 3;
  EXPECT_EQ(first, csv_of(cfg));
  EXPECT_EQ(first.find("wall_ms"), std::string::npos);
}

TEST(Experiment, LubyOnEdgelessGraphTakesEveryNode) {
  ExperimentConfig cfg;
  cfg.algorithm = "luby";
  cfg.family = "edgeless";
  cfg.n = {10};
  const ExperimentResult r = run_experiment(cfg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_TRUE(r.all_valid);
  EXPECT_EQ(r.rows[0].solution, 10.0);
  EXPECT_EQ(r.rows[0].metrics.rounds, 1);
}

TEST(Experiment, TrialSeedsFollowMasterSeed) {
  ExperimentConfig cfg;
  cfg.algorithm = "luby";
  cfg.n = {50};
  cfg.trials = 4;
  cfg.seed = 11;
  const ExperimentResult r = run_experiment(cfg);
  for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(r.rows[t].seed, node_rng(11, 0, "trial", t));
}

TEST(Experiment, SummaryStatistics) {
  ExperimentConfig cfg;
  cfg.algorithm = "luby";
  cfg.n = {200};
  cfg.trials = 5;
  const ExperimentResult r = run_experiment(cfg);
  ASSERT_EQ(r.summary.size(), 3u);
  double sum = 0, hi = 0;
  for (const TrialRow& row : r.rows) {
    sum += row.metrics.avg_awake;
    hi = std::max(hi, row.metrics.avg_awake);
  }
  EXPECT_EQ(r.summary[0].stat, "mean");
  EXPECT_NEAR(r.summary[0].avg_awake, sum / 5, 1e-12);
  EXPECT_EQ(r.summary[2].avg_awake, hi);
  EXPECT_GE(r.summary[1].avg_awake, 0.0);
}

TEST(Experiment, OracleRatiosOnSmallGraphs) {
  ExperimentConfig cfg;
  cfg.algorithm = "general_amplify";
  cfg.n = {16};
  cfg.p = 0.3;
  cfg.trials = 4;
  cfg.oracle = true;
  for (const TrialRow& row : run_experiment(cfg).rows) {
    ASSERT_TRUE(row.ratio.has_value());
    EXPECT_GE(*row.ratio, 1.0);
    EXPECT_EQ(*row.oracle / *row.ratio, row.solution);
  }
  cfg.algorithm = "vertex_cover";
  for (const TrialRow& row : run_experiment(cfg).rows) {
    ASSERT_TRUE(row.ratio.has_value());
    EXPECT_GE(*row.ratio, 1.0);
  }
}

TEST(Experiment, OracleCapIsANoteNotAFailure) {
  ExperimentConfig cfg;
  cfg.algorithm = "sampled_match";
  cfg.n = {40};
  cfg.oracle = true;
  const ExperimentResult r = run_experiment(cfg);
  EXPECT_TRUE(r.all_valid);
  EXPECT_FALSE(r.rows[0].oracle.has_value());
  EXPECT_NE(r.rows[0].note.find("oracle skipped"), std::string::npos);
}

TEST(Experiment, EveryAlgorithmRunsValid) {
  for (const char* algo : {"luby", "awake_mis", "vanilla_match", "sampled_match", "vertex_cover", "bipartite_amplify",
                           "general_amplify", "pipeline"}) {
    ExperimentConfig cfg;
    cfg.algorithm = algo;
    cfg.family = std::string(algo) == "bipartite_amplify" ? "bipartite" : "gnp";
    cfg.n = {30};
    cfg.degree = 4;
    cfg.trials = 2;
    EXPECT_TRUE(run_experiment(cfg).all_valid) << algo;
  }
}

TEST(Experiment, BipartiteAmplifyRejectsOddCycle) {
  ExperimentConfig cfg;
  cfg.algorithm = "bipartite_amplify";
  cfg.family = "cycle";
  cfg.n = {5};
  EXPECT_THROW(run_experiment(cfg), ConfigError);
}

TEST(Experiment, SweepFitsOnePointPerSize) {
  ExperimentConfig cfg;
  cfg.algorithm = "awake_mis";
  apply_setting(cfg, "n", "2^8:2^10:x4");
  cfg.trials = 2;
  const SweepResult s = sweep(cfg);
  ASSERT_EQ(s.runs.size(), 2u);
  EXPECT_EQ(s.scaling[0].n, 256u);
  EXPECT_EQ(s.scaling[1].n, 1024u);
  EXPECT_EQ(s.runs[1].summary.size(), 3u);
  EXPECT_TRUE(s.all_valid);
  EXPECT_NEAR(s.rounds_fit.slope, (s.scaling[1].max_rounds - s.scaling[0].max_rounds) / 2.0, 1e-9);
  std::ostringstream scaling;
  write_scaling_csv(scaling, s);
  EXPECT_EQ(scaling.str().rfind("n,log2_n,mean_rounds,max_rounds,mean_avg_awake\n256,8,", 0), 0u);
}

TEST(Experiment, FitLineRecoversExactLine) {
  const LinearFit f = fit_line({1, 2, 3, 4}, {5, 7, 9, 11});
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 3.0, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
}

TEST(Config, ParsesKeyValueFile) {
  std::istringstream in(
      "# comment\n"
      "algorithm = sampled_match\n"
      "graph = bipartite\n"
      "n = 2^6, 100\n"
      "p = 0.2   # trailing comment\n"
      "eps = 1/10\n"
      "trials = 4\n"
      "oracle = on\n"
      "frac.stop_phase = 3\n");
  ExperimentConfig cfg;
  load_config(cfg, in);
  EXPECT_EQ(cfg.algorithm, "sampled_match");
  EXPECT_EQ(cfg.family, "bipartite");
  EXPECT_EQ(cfg.n, (std::vector<std::size_t>{64, 100}));
  EXPECT_EQ(cfg.p, 0.2);
  EXPECT_EQ(cfg.eps, "1/10");
  EXPECT_EQ(cfg.trials, 4u);
  EXPECT_TRUE(cfg.oracle);
  EXPECT_EQ(cfg.overrides.at("frac.stop_phase"), "3");
  EXPECT_NO_THROW(validate(cfg));
  EXPECT_EQ(to_json(cfg)["overrides"]["frac.stop_phase"], "3");
}

TEST(Config, RejectsBadInput) {
  ExperimentConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "colour", "red"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "trials", "three"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "n", "2^4:2^8:x1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "oracle", "maybe"), ConfigError);
  std::istringstream no_equals("algorithm awake_mis\n");
  EXPECT_THROW(load_config(cfg, no_equals), ConfigError);

  ExperimentConfig bad_algo;
  bad_algo.algorithm = "simplex";
  EXPECT_THROW(validate(bad_algo), ConfigError);
  ExperimentConfig bad_eps;
  bad_eps.eps = "1.5";
  EXPECT_THROW(validate(bad_eps), ConfigError);
  ExperimentConfig bad_override;
  bad_override.overrides["mis.degree_bound"] = "-3";
  EXPECT_THROW(validate(bad_override), ConfigError);
  ExperimentConfig bad_box;
  bad_box.overrides["amplify.box"] = "magic";
  EXPECT_THROW(validate(bad_box), ConfigError);
  ExperimentConfig no_file;
  no_file.family = "file";
  EXPECT_THROW(validate(no_file), ConfigError);
}

TEST(Config, OverridesReachTheAlgorithm) {
  ExperimentConfig cfg;
  cfg.algorithm = "awake_mis";
  cfg.n = {256};
  const Round base = run_experiment(cfg).rows[0].metrics.rounds;
  cfg.overrides["mis.phase_constant"] = "8";
  EXPECT_GT(run_experiment(cfg).rows[0].metrics.rounds, base);
}

TEST(Format, SixSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_number(1234567.0), "1.23457e+06");
  EXPECT_EQ(format_number(20.0), "20");
}

}  // namespace
}  // namespace awake::bench
