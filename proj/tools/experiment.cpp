#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "awake/augmentation.hpp"
#include "awake/errors.hpp"
#include "awake/fractional.hpp"
#include "awake/mis.hpp"
#include "awake/oracles.hpp"
#include "awake/rng.hpp"

namespace awake::bench {

namespace {

const std::set<std::string> kAlgorithms{"luby",        "awake_mis",         "vanilla_match",   "sampled_match",
                                        "vertex_cover", "bipartite_amplify", "general_amplify", "pipeline"};
const std::set<std::string> kFamilies{"gnp", "bipartite", "path", "cycle", "complete", "star", "petersen", "edgeless", "file"};
const std::set<std::string> kOverrides{"mis.part1_fraction",   "mis.part1_round_factor",       "mis.phase_constant",
                                       "mis.degree_bound",     "mis.iterations",               "mis.luby_round_cap",
                                       "frac.estimator_constant", "frac.stop_phase",           "frac.force_phase_probabilities",
                                       "amplify.box",          "amplify.iteration_cap",        "amplify.stall_limit",
                                       "amplify.path_iteration_cap", "amplify.delta",          "oracle.node_cap"};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("bad value for " + key + ": '" + text + "'");
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "on" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "off" || text == "0" || text == "no") return false;
  throw ConfigError("bad value for " + key + ": '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(trim(item));
  return out;
}

std::size_t parse_size(const std::string& text) {
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const auto base = parse_number<std::size_t>("n", text.substr(0, caret));
    const auto exp = parse_number<unsigned>("n", text.substr(caret + 1));
    std::size_t v = 1;
    for (unsigned i = 0; i < exp; ++i) v *= base;
    return v;
  }
  return parse_number<std::size_t>("n", text);
}

// "1024", "2^10,2^12" or "2^10:2^16:x4".
std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3 || parts[2].empty() || parts[2][0] != 'x') throw ConfigError("n range must be from:to:xF");
    const std::size_t from = parse_size(parts[0]), to = parse_size(parts[1]);
    const auto factor = parse_number<std::size_t>("n", parts[2].substr(1));
    if (factor < 2 || from == 0) throw ConfigError("n range needs from >= 1 and factor >= 2");
    for (std::size_t v = from; v <= to; v *= factor) out.push_back(v);
  } else {
    for (const auto& item : split(text, ',')) out.push_back(parse_size(item));
  }
  if (out.empty()) throw ConfigError("n range is empty");
  return out;
}

const std::string* find_override(const ExperimentConfig& cfg, const std::string& key) {
  const auto it = cfg.overrides.find(key);
  return it == cfg.overrides.end() ? nullptr : &it->second;
}

MisParams mis_params(const ExperimentConfig& cfg) {
  MisParams p;
  if (auto v = find_override(cfg, "mis.part1_fraction")) p.part1_fraction = parse_number<double>("mis.part1_fraction", *v);
  if (auto v = find_override(cfg, "mis.part1_round_factor")) p.part1_round_factor = parse_number<double>("mis.part1_round_factor", *v);
  if (auto v = find_override(cfg, "mis.phase_constant")) p.part2_phase_constant = parse_number<unsigned>("mis.phase_constant", *v);
  if (auto v = find_override(cfg, "mis.degree_bound")) p.part2_degree_bound = parse_number<std::size_t>("mis.degree_bound", *v);
  if (auto v = find_override(cfg, "mis.iterations")) p.part2_iterations = parse_number<unsigned>("mis.iterations", *v);
  if (auto v = find_override(cfg, "mis.luby_round_cap")) p.luby_round_cap = parse_number<Round>("mis.luby_round_cap", *v);
  return p;
}

SampleParams sample_params(const ExperimentConfig& cfg) {
  SampleParams p;
  if (auto v = find_override(cfg, "frac.estimator_constant"))
    p.estimator_constant = parse_number<double>("frac.estimator_constant", *v);
  if (auto v = find_override(cfg, "frac.stop_phase")) p.stop_phase = parse_number<unsigned>("frac.stop_phase", *v);
  if (auto v = find_override(cfg, "frac.force_phase_probabilities"))
    for (const auto& item : split(*v, ','))
      p.forced_probabilities.push_back(parse_number<double>("frac.force_phase_probabilities", item));
  return p;
}

MatchBox make_box(const ExperimentConfig& cfg, Epsilon eps) {
  const std::string* name = find_override(cfg, "amplify.box");
  const std::string box = name ? *name : "greedy";
  if (box == "exact") return MatchBox::exact();
  if (box == "greedy") return MatchBox::greedy_maximal();
  if (box == "sleeping") return MatchBox::sleeping(eps, sample_params(cfg));
  throw ConfigError("amplify.box must be exact, greedy or sleeping");
}

GeneralOptions general_options(const ExperimentConfig& cfg) {
  GeneralOptions o;
  if (auto v = find_override(cfg, "amplify.iteration_cap")) o.iteration_cap = parse_number<std::size_t>("amplify.iteration_cap", *v);
  if (auto v = find_override(cfg, "amplify.stall_limit")) o.stall_limit = parse_number<std::size_t>("amplify.stall_limit", *v);
  if (auto v = find_override(cfg, "amplify.path_iteration_cap"))
    o.search.iteration_cap = parse_number<std::size_t>("amplify.path_iteration_cap", *v);
  if (auto v = find_override(cfg, "amplify.delta")) o.search.delta = parse_number<double>("amplify.delta", *v);
  return o;
}

OracleOptions oracle_options(const ExperimentConfig& cfg) {
  OracleOptions o;
  if (auto v = find_override(cfg, "oracle.node_cap")) o.node_cap = parse_number<std::size_t>("oracle.node_cap", *v);
  return o;
}

struct Instance {
  Graph graph;
  std::optional<Sides> sides;
  std::string label;
};

Instance make_instance(const ExperimentConfig& cfg, std::size_t n, std::uint64_t seed) {
  const double p = cfg.p.value_or(n > 0 ? std::min(1.0, cfg.degree / static_cast<double>(n)) : 0.0);
  const std::string density = format_number(p);
  if (cfg.family == "gnp") return {gen_gnp(n, p, seed), std::nullopt, "gnp(" + std::to_string(n) + "," + density + ")"};
  if (cfg.family == "bipartite") {
    BipartiteGraph b = gen_bipartite(n / 2, n - n / 2, p, seed);
    return {std::move(b.graph), std::move(b.right), "bipartite(" + std::to_string(n) + "," + density + ")"};
  }
  if (cfg.family == "path") return {make_path(n), std::nullopt, "path(" + std::to_string(n) + ")"};
  if (cfg.family == "cycle") return {make_cycle(n), std::nullopt, "cycle(" + std::to_string(n) + ")"};
  if (cfg.family == "complete") return {make_complete(n), std::nullopt, "complete(" + std::to_string(n) + ")"};
  if (cfg.family == "star") return {make_star(n > 0 ? n - 1 : 0), std::nullopt, "star(" + std::to_string(n) + ")"};
  if (cfg.family == "petersen") return {make_petersen(), std::nullopt, "petersen"};
  if (cfg.family == "edgeless") return {Graph(n, {}), std::nullopt, "edgeless(" + std::to_string(n) + ")"};
  std::ifstream in(cfg.graph_file);
  if (!in) throw ConfigError("cannot open graph file '" + cfg.graph_file + "'");
  return {read_graph(in), std::nullopt, "file(" + cfg.graph_file + ")"};
}

std::size_t effective_n(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.family == "petersen") return 10;
  return n;
}

void fill_fractional(TrialRow& row, const SampledResult& r) {
  row.metrics = summarize(r.ledger);
  row.metrics.diagnostics = r.diagnostics;
  bool valid = true;
  for (const Rational& c : r.assignment.exact_node_values()) valid = valid && c <= 1;
  row.metrics.valid = valid && r.ledger.consistent();
  row.solution = r.assignment.total();
}

void add_matching_oracle(TrialRow& row, const Instance& inst, const ExperimentConfig& cfg) {
  try {
    const Matching best = inst.sides ? max_matching_bipartite(inst.graph, *inst.sides)
                                     : exact_max_matching(inst.graph, oracle_options(cfg));
    row.oracle = static_cast<double>(best.size());
    if (row.solution > 0) row.ratio = *row.oracle / row.solution;
    else if (*row.oracle == 0) row.ratio = 1.0;
  } catch (const OracleTooLarge& e) {
    row.note = std::string("oracle skipped: ") + e.what();
  }
}

TrialRow run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t t) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = trial_seed(cfg.seed, t);
  const Instance inst = make_instance(cfg, n, node_rng(seed, 0, "graph", 0));
  const Graph& g = inst.graph;
  const Epsilon eps = Epsilon::parse(cfg.eps);

  TrialRow row;
  row.algorithm = cfg.algorithm;
  row.graph = inst.label;
  row.n = g.node_count();
  row.m = g.edge_count();
  row.trial = t;
  row.seed = seed;

  const std::string& a = cfg.algorithm;
  if (a == "luby" || a == "awake_mis") {
    const MisResult r = a == "luby" ? luby_mis(g, seed, mis_params(cfg).luby_round_cap) : awake_mis(g, seed, mis_params(cfg));
    row.metrics = r.metrics;
    row.metrics.valid = verify_mis(g, r.set) && r.ledger.consistent();
    row.solution = static_cast<double>(r.set.size());
  } else if (a == "vanilla_match" || a == "sampled_match") {
    SampleParams params = sample_params(cfg);
    if (a == "vanilla_match") params.stop_phase = 1;
    fill_fractional(row, sampled_fractional(g, eps, params, seed));
    if (cfg.oracle) add_matching_oracle(row, inst, cfg);
  } else if (a == "vertex_cover") {
    const SampledResult r = sampled_fractional(g, eps, sample_params(cfg), seed);
    const VertexSet cover = extract_vertex_cover(r.assignment);
    row.metrics = summarize(r.ledger);
    row.metrics.diagnostics = r.diagnostics;
    row.metrics.valid = verify_vertex_cover(g, cover) && r.ledger.consistent();
    row.solution = static_cast<double>(cover.size());
    if (cfg.oracle) {
      try {
        row.oracle = static_cast<double>(exact_min_vertex_cover(g, oracle_options(cfg)).size());
        row.ratio = *row.oracle > 0 ? row.solution / *row.oracle : 1.0;
      } catch (const OracleTooLarge& e) {
        row.note = std::string("oracle skipped: ") + e.what();
      }
    }
  } else {
    AmplifyResult r;
    if (a == "bipartite_amplify") {
      std::optional<Sides> sides = inst.sides ? inst.sides : two_coloring(g);
      if (!sides) throw ConfigError("bipartite_amplify needs a bipartite graph");
      r = bipartite_one_plus_eps(g, *sides, make_box(cfg, eps), eps.value(), seed,
                                 BipartiteOptions{general_options(cfg).search, {}, {}});
    } else if (a == "general_amplify") {
      r = general_one_plus_eps(g, make_box(cfg, eps), eps.value(), seed, general_options(cfg));
    } else {
      PipelineResult pr = full_matching_pipeline(g, eps, seed, general_options(cfg), sample_params(cfg));
      r.matching = std::move(pr.matching);
      r.ledger = std::move(pr.ledger);
    }
    row.metrics = summarize(r.ledger);
    row.metrics.valid = verify_matching(g, r.matching) && r.ledger.consistent();
    row.solution = static_cast<double>(r.matching.size());
    if (cfg.oracle) add_matching_oracle(row, inst, cfg);
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<SummaryRow> summarize_rows(const std::vector<TrialRow>& rows, std::size_t n) {
  const auto count = static_cast<double>(rows.size());
  SummaryRow mean{"mean", n}, sd{"stddev", n}, mx{"max", n};
  std::vector<double> ratios;
  auto fields = [](const TrialRow& r) {
    return std::array<double, 8>{static_cast<double>(r.metrics.rounds),
                                 static_cast<double>(r.metrics.total_awake),
                                 r.metrics.avg_awake,
                                 static_cast<double>(r.metrics.max_awake),
                                 r.solution,
                                 static_cast<double>(r.metrics.diagnostics.heavy_events),
                                 static_cast<double>(r.metrics.diagnostics.light_events),
                                 r.metrics.diagnostics.spoiled_value};
  };
  std::array<double, 8> sum{}, sq{}, hi{};
  hi.fill(-INFINITY);
  for (const TrialRow& r : rows) {
    const auto f = fields(r);
    for (std::size_t i = 0; i < f.size(); ++i) {
      sum[i] += f[i];
      sq[i] += f[i] * f[i];
      hi[i] = std::max(hi[i], f[i]);
    }
    if (r.ratio) ratios.push_back(*r.ratio);
  }
  auto assign = [](SummaryRow& s, const std::array<double, 8>& v) {
    s.rounds = v[0];
    s.total_awake = v[1];
    s.avg_awake = v[2];
    s.max_awake = v[3];
    s.solution = v[4];
    s.heavy = v[5];
    s.light = v[6];
    s.spoiled = v[7];
  };
  std::array<double, 8> m{}, d{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = sum[i] / count;
    d[i] = count > 1 ? std::sqrt(std::max(0.0, (sq[i] - count * m[i] * m[i]) / (count - 1))) : 0.0;
  }
  assign(mean, m);
  assign(sd, d);
  assign(mx, hi);
  if (!ratios.empty()) {
    double s = 0, s2 = 0, h = -INFINITY;
    for (double r : ratios) {
      s += r;
      s2 += r * r;
      h = std::max(h, r);
    }
    const auto k = static_cast<double>(ratios.size());
    mean.ratio = s / k;
    sd.ratio = k > 1 ? std::sqrt(std::max(0.0, (s2 - k * (s / k) * (s / k)) / (k - 1))) : 0.0;
    mx.ratio = h;
  }
  return {mean, sd, mx};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string parts_field(const RunMetrics& m) {
  std::string out;
  for (const auto& [part, total] : m.part_awake) {
    if (!out.empty()) out += ';';
    out += part + "=" + std::to_string(total);
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key), value = trim(raw_value);
  if (key == "algorithm") cfg.algorithm = value;
  else if (key == "graph" || key == "family") cfg.family = value;
  else if (key == "n") cfg.n = parse_sizes(value);
  else if (key == "p") cfg.p = parse_number<double>(key, value);
  else if (key == "degree") cfg.degree = parse_number<double>(key, value);
  else if (key == "graph_file") cfg.graph_file = value;
  else if (key == "eps") cfg.eps = value;
  else if (key == "trials") cfg.trials = parse_number<std::size_t>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "oracle") cfg.oracle = parse_bool(key, value);
  else if (key == "out") cfg.out = value;
  else if (key == "threads") cfg.threads = parse_number<unsigned>(key, value);
  else if (key == "timing") cfg.timing = parse_bool(key, value);
  else if (kOverrides.contains(key)) cfg.overrides[key] = value;
  else throw ConfigError("unknown setting '" + key + "'");
}

void load_config(ExperimentConfig& cfg, std::istream& in) {
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  load_config(cfg, in);
}

void validate(const ExperimentConfig& cfg) {
  if (!kAlgorithms.contains(cfg.algorithm)) throw ConfigError("unknown algorithm '" + cfg.algorithm + "'");
  if (!kFamilies.contains(cfg.family)) throw ConfigError("unknown graph family '" + cfg.family + "'");
  if (cfg.family == "file" && cfg.graph_file.empty()) throw ConfigError("graph = file needs graph_file");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.n.empty()) throw ConfigError("n range is empty");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  if (cfg.p && !(*cfg.p >= 0.0 && *cfg.p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  try {
    Epsilon::parse(cfg.eps);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  // Surface bad override values before any trial runs.
  mis_params(cfg);
  sample_params(cfg);
  general_options(cfg);
  oracle_options(cfg);
  if (auto v = find_override(cfg, "amplify.box"); v && *v != "exact" && *v != "greedy" && *v != "sleeping")
    throw ConfigError("amplify.box must be exact, greedy or sleeping");
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["algorithm"] = cfg.algorithm;
  j["graph"] = cfg.family;
  j["n"] = cfg.n;
  j["p"] = cfg.p ? nlohmann::json(*cfg.p) : nlohmann::json(nullptr);
  j["degree"] = cfg.degree;
  if (!cfg.graph_file.empty()) j["graph_file"] = cfg.graph_file;
  j["eps"] = cfg.eps;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["oracle"] = cfg.oracle;
  j["out"] = cfg.out;
  j["overrides"] = cfg.overrides;
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t n = effective_n(cfg, cfg.n.front());
  ExperimentResult result;
  result.rows.resize(cfg.trials);
  std::vector<std::exception_ptr> errors(cfg.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < cfg.trials; t = next++) {
      try {
        result.rows[t] = run_trial(cfg, n, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const TrialRow& r : result.rows) result.all_valid = result.all_valid && r.metrics.valid;
  result.summary = summarize_rows(result.rows, result.rows.front().n);
  return result;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit f;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) {
    f.intercept = y.empty() ? 0.0 : y.front();
    f.r2 = 1.0;
    return f;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  f.slope = denom == 0 ? 0.0 : (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
    ss_tot += (y[i] - sy / n) * (y[i] - sy / n);
  }
  f.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

SweepResult sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  SweepResult out;
  std::vector<double> x, rounds, awake;
  for (std::size_t n : cfg.n) {
    ExperimentConfig one = cfg;
    one.n = {n};
    ExperimentResult r = run_experiment(one);
    ScalingRow s;
    s.n = r.rows.front().n;
    s.log2_n = std::log2(static_cast<double>(std::max<std::size_t>(s.n, 1)));
    s.mean_rounds = r.summary[0].rounds;
    s.max_rounds = r.summary[2].rounds;
    s.mean_avg_awake = r.summary[0].avg_awake;
    x.push_back(s.log2_n);
    rounds.push_back(s.max_rounds);
    awake.push_back(s.mean_avg_awake);
    out.scaling.push_back(s);
    out.all_valid = out.all_valid && r.all_valid;
    out.runs.push_back(std::move(r));
  }
  out.rounds_fit = fit_line(x, rounds);
  out.awake_fit = fit_line(x, awake);
  return out;
}

void write_csv(std::ostream& out, const ExperimentResult& result, bool timing, bool header) {
  if (header) {
    out << "kind,algorithm,graph,n,m,trial,seed,rounds,total_awake,avg_awake,max_awake,solution,valid,oracle,ratio,"
           "heavy,light,spoiled,parts,note";
    if (timing) out << ",wall_ms";
    out << '\n';
  }
  for (const TrialRow& r : result.rows) {
    const RunMetrics& m = r.metrics;
    out << "trial," << csv_field(r.algorithm) << ',' << csv_field(r.graph) << ',' << r.n << ',' << r.m << ',' << r.trial
        << ',' << r.seed << ',' << m.rounds << ',' << m.total_awake << ',' << format_number(m.avg_awake) << ','
        << m.max_awake << ',' << format_number(r.solution) << ',' << (m.valid ? "true" : "false") << ','
        << optional_number(r.oracle) << ',' << optional_number(r.ratio) << ',' << m.diagnostics.heavy_events << ','
        << m.diagnostics.light_events << ',' << format_number(m.diagnostics.spoiled_value) << ','
        << csv_field(parts_field(m)) << ',' << csv_field(r.note);
    if (timing) out << ',' << format_number(r.wall_ms);
    out << '\n';
  }
  const TrialRow& first = result.rows.front();
  for (const SummaryRow& s : result.summary) {
    out << s.stat << ',' << csv_field(first.algorithm) << ',' << csv_field(first.graph) << ',' << s.n << ",,,,"
        << format_number(s.rounds) << ',' << format_number(s.total_awake) << ',' << format_number(s.avg_awake) << ','
        << format_number(s.max_awake) << ',' << format_number(s.solution) << ','
        << (result.all_valid ? "true" : "false") << ",," << optional_number(s.ratio) << ',' << format_number(s.heavy)
        << ',' << format_number(s.light) << ',' << format_number(s.spoiled) << ",,";
    if (timing) out << ',';
    out << '\n';
  }
}

void write_scaling_csv(std::ostream& out, const SweepResult& result) {
  out << "n,log2_n,mean_rounds,max_rounds,mean_avg_awake\n";
  for (const ScalingRow& s : result.scaling)
    out << s.n << ',' << format_number(s.log2_n) << ',' << format_number(s.mean_rounds) << ','
        << format_number(s.max_rounds) << ',' << format_number(s.mean_avg_awake) << '\n';
}

namespace {

nlohmann::json summary_json(const std::vector<SummaryRow>& rows) {
  nlohmann::json j = nlohmann::json::object();
  for (const SummaryRow& s : rows) {
    nlohmann::json r;
    r["rounds"] = s.rounds;
    r["total_awake"] = s.total_awake;
    r["avg_awake"] = s.avg_awake;
    r["max_awake"] = s.max_awake;
    r["solution"] = s.solution;
    if (s.ratio) r["ratio"] = *s.ratio;
    r["heavy"] = s.heavy;
    r["light"] = s.light;
    r["spoiled"] = s.spoiled;
    j[s.stat] = r;
  }
  return j;
}

nlohmann::json fit_json(const LinearFit& f) { return {{"intercept", f.intercept}, {"slope", f.slope}, {"r2", f.r2}}; }

}  // namespace

nlohmann::json experiment_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
  nlohmann::json j;
  j["config"] = to_json(cfg);
  j["all_valid"] = result.all_valid;
  j["summary"] = summary_json(result.summary);
  return j;
}

nlohmann::json sweep_json(const ExperimentConfig& cfg, const SweepResult& result) {
  nlohmann::json j;
  j["config"] = to_json(cfg);
  j["all_valid"] = result.all_valid;
  j["rounds_vs_log2_n"] = fit_json(result.rounds_fit);
  j["avg_awake_vs_log2_n"] = fit_json(result.awake_fit);
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    nlohmann::json p;
    p["n"] = result.scaling[i].n;
    p["summary"] = summary_json(result.runs[i].summary);
    points.push_back(p);
  }
  j["points"] = points;
  if (result.scaling.size() >= 2)
    j["avg_awake_ratio_last_first"] = result.scaling.back().mean_avg_awake / result.scaling.front().mean_avg_awake;
  return j;
}

}  // namespace awake::bench
