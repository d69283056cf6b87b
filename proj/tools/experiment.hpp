#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "awake/engine.hpp"

namespace awake::bench {

/// Everything needed to reproduce a run. Settings can come from a key/value
/// file, from CLI flags, or from `--override key=value`.
struct ExperimentConfig {
  std::string algorithm = "awake_mis";
  /// gnp, bipartite, path, cycle, complete, star, petersen, edgeless, file.
  std::string family = "gnp";
  std::vector<std::size_t> n{1024};
  /// Edge probability; if unset, degree / n.
  std::optional<double> p;
  double degree = 10.0;
  std::string graph_file;
  std::string eps = "0.05";
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  bool oracle = false;
  std::string out;
  unsigned threads = 1;
  bool timing = false;
  /// Algorithm tunables (mis.*, frac.*, amplify.*, oracle.*).
  std::map<std::string, std::string> overrides;
};

/// Sets one key; throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
/// "key = value" lines; '#' starts a comment.
void load_config(ExperimentConfig& cfg, std::istream& in);
void load_config_file(ExperimentConfig& cfg, const std::string& path);
/// Throws ConfigError unless the config can run.
void validate(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);

struct TrialRow {
  std::string algorithm;
  std::string graph;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
  /// Matching or set size, or the fractional total.
  double solution = 0.0;
  std::optional<double> oracle;
  /// Approximation factor (>= 1 for a correct approximation).
  std::optional<double> ratio;
  std::string note;
  double wall_ms = 0.0;
};

struct SummaryRow {
  std::string stat;  // mean, stddev, max
  std::size_t n = 0;
  double rounds = 0, total_awake = 0, avg_awake = 0, max_awake = 0, solution = 0;
  std::optional<double> ratio;
  double heavy = 0, light = 0, spoiled = 0;
};

struct ExperimentResult {
  std::vector<TrialRow> rows;
  std::vector<SummaryRow> summary;
  bool all_valid = true;
};

/// Runs cfg.trials trials on cfg.n.front(). Trial t uses
/// node_rng(seed, 0, "trial", t) for both the graph and the algorithm.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingRow {
  std::size_t n = 0;
  double log2_n = 0, mean_rounds = 0, max_rounds = 0, mean_avg_awake = 0;
};

struct SweepResult {
  std::vector<ExperimentResult> runs;
  std::vector<ScalingRow> scaling;
  /// max rounds ~ a + b log2 n.
  LinearFit rounds_fit;
  /// mean avg-awake ~ a + b log2 n (b: awake rounds per doubling).
  LinearFit awake_fit;
  bool all_valid = true;
};

/// One run_experiment per entry of cfg.n.
SweepResult sweep(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const ExperimentResult& result, bool timing, bool header = true);
void write_scaling_csv(std::ostream& out, const SweepResult& result);
nlohmann::json sweep_json(const ExperimentConfig& cfg, const SweepResult& result);
nlohmann::json experiment_json(const ExperimentConfig& cfg, const ExperimentResult& result);

/// Six significant digits, fixed across platforms.
std::string format_number(double value);

}  // namespace awake::bench
