#include "awake/fractional.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "awake/rng.hpp"

namespace awake {

using boost::multiprecision::cpp_int;

// ---- Epsilon ---------------------------------------------------------------------

Epsilon::Epsilon(std::uint64_t n, std::uint64_t d) {
  if (d == 0 || n == 0 || n >= d) throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
  const std::uint64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad epsilon: '" + std::string(s) + "'");
  return v;
}

std::uint64_t pow10(int k) {
  if (k < 0 || k > 18) throw std::invalid_argument("epsilon has too many digits");
  std::uint64_t v = 1;
  while (k-- > 0) v *= 10;
  return v;
}

}  // namespace

Epsilon Epsilon::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return Epsilon(parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1)));

  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = text.substr(e + 1);
    bool negative = false;
    if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
      negative = ex.front() == '-';
      ex.remove_prefix(1);
    }
    exponent = static_cast<int>(parse_u64(ex)) * (negative ? -1 : 1);
    text = text.substr(0, e);
  }
  std::string digits(text);
  int frac_digits = 0;
  if (const auto dot = digits.find('.'); dot != std::string::npos) {
    frac_digits = static_cast<int>(digits.size() - dot - 1);
    digits.erase(dot, 1);
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  if (digits.empty()) throw std::invalid_argument("epsilon must be positive");
  std::uint64_t n = parse_u64(digits);
  const int scale = frac_digits - exponent;
  if (scale >= 0) return Epsilon(n, pow10(scale));
  return Epsilon(n * pow10(-scale), 1);
}

Epsilon Epsilon::from_double(double value) {
  if (!(value > 0.0 && value < 1.0)) throw std::invalid_argument("epsilon must lie strictly between 0 and 1");
  const auto n = static_cast<std::uint64_t>(std::llround(value * 1e9));
  return Epsilon(std::max<std::uint64_t>(n, 1), 1'000'000'000);
}

std::string Epsilon::str() const { return std::to_string(num) + "/" + std::to_string(den); }

// ---- FractionalAssignment ----------------------------------------------------------

FractionalAssignment FractionalAssignment::from_weights(const Graph& g, std::vector<double> weights) {
  if (weights.size() != g.edge_count()) throw std::invalid_argument("from_weights: one weight per edge expected");
  FractionalAssignment a;
  a.node_count = g.node_count();
  a.edges.assign(g.edges().begin(), g.edges().end());
  a.x = std::move(weights);
  a.frozen_round.assign(a.x.size(), -1);
  a.zeroed.assign(a.x.size(), false);
  a.node_value.assign(a.node_count, 0.0);
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    a.node_value[a.edges[e].u] += a.x[e];
    a.node_value[a.edges[e].v] += a.x[e];
  }
  a.max_degree = g.max_degree();
  return a;
}

double FractionalAssignment::total() const { return std::accumulate(x.begin(), x.end(), 0.0); }

Rational FractionalAssignment::exact_weight(std::size_t e) const {
  if (!epsilon || frozen_round[e] < 0) return Rational(x[e]);
  if (zeroed[e]) return Rational(0);
  const cpp_int up = cpp_int(epsilon->den + epsilon->num);
  const cpp_int down = cpp_int(epsilon->den);
  const auto k = static_cast<unsigned>(frozen_round[e]);
  return Rational(boost::multiprecision::pow(up, k)) /
         Rational(boost::multiprecision::pow(down, k) * cpp_int(max_degree));
}

Rational FractionalAssignment::exact_total() const {
  Rational sum = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) sum += exact_weight(e);
  return sum;
}

std::vector<Rational> FractionalAssignment::exact_node_values() const {
  std::vector<Rational> c(node_count, Rational(0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Rational w = exact_weight(e);
    c[edges[e].u] += w;
    c[edges[e].v] += w;
  }
  return c;
}

// ---- schedule ----------------------------------------------------------------------

double iterated_log(double n, unsigned i) {
  double v = n;
  for (unsigned k = 0; k < i; ++k) v = std::max(2.0, std::log2(v));
  return v;
}

unsigned last_phase(std::size_t n) {
  unsigned i = 1;
  while (iterated_log(static_cast<double>(std::max<std::size_t>(n, 2)), i) > 2.0) ++i;
  return i;
}

unsigned phase_of_round(Round j, std::size_t n, double eps, std::size_t max_degree) {
  const double w = std::pow(1.0 + eps, static_cast<double>(j)) / static_cast<double>(std::max<std::size_t>(max_degree, 1));
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  for (unsigned i = 1;; ++i) {
    const double l = iterated_log(nn, i);
    if (w <= 1.0 / std::pow(l, 5.0) || l <= 2.0) return i;
  }
}

SampleSchedule::SampleSchedule(std::size_t n, std::size_t max_degree, Epsilon eps, const SampleParams& params)
    : n_(n), eps_(eps), eps_value_(eps.value()), max_degree_(std::max<std::size_t>(max_degree, 1)), params_(params) {
  const cpp_int up = eps.den + eps.num;
  const cpp_int down = eps.den;
  const cpp_int delta = max_degree_;

  // final round J: first k with (1+eps)^k >= Delta.
  cpp_int up_pow = 1, down_pow = 1;
  Round J = 0;
  while (up_pow < down_pow * delta) {
    up_pow *= up;
    down_pow *= down;
    ++J;
  }
  final_round_ = J;
  scale_ = down_pow * delta;
  scaled_.resize(static_cast<std::size_t>(J) + 1);
  cpp_int u = 1;
  for (Round k = 0; k <= J; ++k) {
    scaled_[static_cast<std::size_t>(k)] = u * boost::multiprecision::pow(down, static_cast<unsigned>(J - k));
    u *= up;
  }
  for (Round k = 0; k <= J; ++k) {
    weight_.push_back(Rational(scaled_[static_cast<std::size_t>(k)], scale_).convert_to<double>());
    phase_.push_back(phase_of_round(k, n_, eps_value_, max_degree_));
  }

  const double nn = static_cast<double>(std::max<std::size_t>(n_, 2));
  const double cutoff = eps_value_ * std::log(1.0 + eps_value_) / 1000.0;
  if (params_.stop_phase) {
    stop_phase_ = std::max(1u, *params_.stop_phase);
  } else {
    stop_phase_ = 1;
    while (!(1.0 / iterated_log(nn, stop_phase_) > cutoff)) ++stop_phase_;
  }

  vanilla_start_ = final_round_;
  for (Round k = 0; k <= J; ++k) {
    const unsigned i = phase(k);
    if (i >= stop_phase_ || probability(i) >= 1.0) {
      vanilla_start_ = k;
      break;
    }
  }
}

double SampleSchedule::weight(Round j) const { return j < 0 ? 0.0 : weight_[static_cast<std::size_t>(j)]; }

double SampleSchedule::probability(unsigned i) const {
  if (i >= 1 && i <= params_.forced_probabilities.size())
    return std::min(1.0, params_.forced_probabilities[i - 1]);
  const double l = iterated_log(static_cast<double>(std::max<std::size_t>(n_, 2)), i);
  return std::min(1.0, params_.estimator_constant / std::pow(l, 4.0));
}

// ---- the freezing process -----------------------------------------------------------

namespace {

constexpr Round kNever = -1;

SampledResult run_fractional(const Graph& g, Epsilon eps, const SampleParams& params, std::uint64_t seed,
                             std::string_view part_label) {
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  const SampleSchedule schedule(n, g.max_degree(), eps, params);
  const Round V = schedule.vanilla_start();
  const Round F = schedule.final_round();
  const cpp_int& scale = schedule.scale();
  const cpp_int q = eps.den;
  const cpp_int tight_rhs = scale * cpp_int(eps.den - eps.num);  // c*q >= scale*(q-p)
  const double sampled_threshold = 1.0 - 10.0 * eps.value();
  const auto stride = static_cast<std::uint64_t>(F) + 1;

  std::vector<Round> frozen(n, kNever);
  std::vector<std::size_t> active_deg(n);
  std::vector<cpp_int> frozen_part(n);
  std::vector<Round> first_sample(n, std::numeric_limits<Round>::max());
  for (NodeId v = 0; v < n; ++v) active_deg[v] = g.degree(v);
  std::size_t active_edges = m;
  Round last_round = 0;
  std::vector<double> contribution(n, 0.0);
  std::vector<NodeId> freezing;

  for (Round j = 0; j <= F && active_edges > 0; ++j) {
    last_round = j;
    freezing.clear();
    if (j < V) {
      // s_u = sum over h <= j with u in A_h^j of (w_h - w_{h-1}) / p_{i(h)}.
      for (NodeId u = 0; u < n; ++u) {
        double s = 0.0;
        const Round active_until = frozen[u] == kNever ? j : std::min(j, frozen[u]);
        for (Round h = 0; h <= j; ++h) {
          const double p = schedule.probability(schedule.phase(h));
          const auto bits = node_rng(seed, u, "sample", static_cast<std::uint64_t>(h) * stride + static_cast<std::uint64_t>(j));
          if (!bernoulli(bits, p)) continue;
          first_sample[u] = std::min(first_sample[u], h);
          if (h <= active_until) s += (schedule.weight(h) - schedule.weight(h - 1)) / p;
        }
        contribution[u] = s;
      }
      for (NodeId v = 0; v < n; ++v) {
        if (frozen[v] != kNever || active_deg[v] == 0) continue;
        double estimate = 0.0;
        for (NodeId u : g.neighbors(v)) estimate += contribution[u];
        if (estimate > sampled_threshold || j == F) freezing.push_back(v);
      }
    } else {
      const cpp_int& w = schedule.scaled_weight(j);
      for (NodeId v = 0; v < n; ++v) {
        if (frozen[v] != kNever || active_deg[v] == 0) continue;
        const cpp_int c = frozen_part[v] + w * active_deg[v];
        if (V == 0 && c > scale) throw std::logic_error("vanilla round left a node with c_v > 1");
        if (c * q >= tight_rhs || j == F) freezing.push_back(v);
      }
    }

    for (NodeId v : freezing) frozen[v] = j;
    const cpp_int& w = schedule.scaled_weight(j);
    for (NodeId v : freezing) {
      for (NodeId u : g.neighbors(v)) {
        if (frozen[u] == kNever) {
          frozen_part[u] += w;
          --active_deg[u];
          --active_edges;
        } else if (frozen[u] == j && u > v) {
          --active_edges;
        }
      }
    }
  }

  SampledResult out;
  FractionalAssignment& a = out.assignment;
  a.node_count = n;
  a.edges.assign(g.edges().begin(), g.edges().end());
  a.x.assign(m, 0.0);
  a.frozen_round.assign(m, kNever);
  a.zeroed.assign(m, false);
  a.node_value.assign(n, 0.0);
  a.epsilon = eps;
  a.max_degree = g.max_degree();

  std::vector<cpp_int> value(n);
  std::vector<Round> last_active(n, kNever);
  for (std::size_t e = 0; e < m; ++e) {
    const Edge& ed = a.edges[e];
    const Round fu = frozen[ed.u], fv = frozen[ed.v];
    const Round k = fu == kNever ? fv : fv == kNever ? fu : std::min(fu, fv);
    a.frozen_round[e] = k;
    a.x[e] = schedule.weight(k);
    value[ed.u] += schedule.scaled_weight(k);
    value[ed.v] += schedule.scaled_weight(k);
    last_active[ed.u] = std::max(last_active[ed.u], k);
    last_active[ed.v] = std::max(last_active[ed.v], k);
  }

  // Heavy removal and diagnostics.
  const bool lights_possible = 20 * eps.num < eps.den;
  const cpp_int light_rhs = lights_possible ? scale * cpp_int(eps.den - 20 * eps.num) : cpp_int(0);
  std::vector<bool> heavy(n, false);
  for (NodeId v = 0; v < n; ++v) {
    heavy[v] = value[v] > scale;
    if (heavy[v]) ++out.diagnostics.heavy_events;
    if (frozen[v] != kNever && lights_possible && value[v] * q < light_rhs) ++out.diagnostics.light_events;
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (heavy[a.edges[e].u] || heavy[a.edges[e].v]) {
      out.diagnostics.spoiled_value += a.x[e];
      a.x[e] = 0.0;
      a.zeroed[e] = true;
    }
    a.node_value[a.edges[e].u] += a.x[e];
    a.node_value[a.edges[e].v] += a.x[e];
  }
  std::vector<NodeId> frozen_ids;
  for (NodeId v = 0; v < n; ++v)
    if (frozen[v] != kNever) frozen_ids.push_back(v);
  a.frozen_nodes = VertexSet(std::move(frozen_ids));

  // Awake rounds: a node sampled first for round h wakes at h-1; everyone is
  // up from the vanilla start. It stays up while it has an active edge, plus
  // the closing heavy-removal round.
  out.rounds = last_round + 2;
  out.ledger = AwakeLedger(n);
  out.ledger.add_rounds(out.rounds);
  for (NodeId v = 0; v < n; ++v) {
    Round wake = V;
    if (first_sample[v] != std::numeric_limits<Round>::max()) wake = std::min(wake, std::max<Round>(0, first_sample[v] - 1));
    wake = std::min(wake, last_round);
    const Round end = std::max(wake, last_active[v]);
    out.ledger.charge(v, part_label, static_cast<std::uint64_t>(end - wake + 2));
  }
  return out;
}

}  // namespace

FractionalAssignment vanilla_fractional(const Graph& g, Epsilon eps) {
  SampleParams params;
  params.stop_phase = 1;
  return run_fractional(g, eps, params, 0, "vanilla").assignment;
}

SampledResult sampled_fractional(const Graph& g, Epsilon eps, const SampleParams& params, std::uint64_t seed,
                                 std::string_view part_label) {
  return run_fractional(g, eps, params, seed, part_label);
}

VertexSet extract_vertex_cover(const FractionalAssignment& assignment) { return assignment.frozen_nodes; }

void write_assignment(std::ostream& out, const FractionalAssignment& a) {
  const auto flags = out.flags();
  const auto precision = out.precision(17);
  for (std::size_t e = 0; e < a.edges.size(); ++e)
    out << a.edges[e].u << ' ' << a.edges[e].v << ' ' << a.x[e] << ' ' << a.frozen_round[e] << '\n';
  out.precision(precision);
  out.flags(flags);
}

}  // namespace awake
