#include "irrevis/nullmodels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/FFT>

#include "irrevis/errors.hpp"
#include "irrevis/visibility.hpp"

namespace irrevis {

namespace {

const char* kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::white_noise: return "white_noise";
    case GeneratorKind::additive_walk: return "additive_walk";
    case GeneratorKind::multiplicative_walk: return "multiplicative_walk";
    case GeneratorKind::fbm: return "fbm";
  }
  return "unknown";
}

// Autocovariance of fractional Gaussian noise with unit variance.
double fgn_autocovariance(double lag, double hurst) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(lag + 1.0, h2) - 2.0 * std::pow(lag, h2) +
                std::pow(std::abs(lag - 1.0), h2));
}

// Exact synthesis of fractional Gaussian noise by circulant embedding.
// The covariance circulant of size M = 2m (m a power of two >= n, so the
// transforms stay fast) is diagonalized by the DFT; a Hermitian complex
// Gaussian spectrum with those eigenvalue weights transforms back into a
// stationary Gaussian sequence with the exact fGn autocovariance. The first
// n samples are returned; truncation preserves exactness by stationarity.
std::vector<double> synthesize_fgn(std::size_t n, double hurst,
                                   std::mt19937_64& rng) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  const std::size_t M = 2 * m;

  std::vector<double> circulant_row(M);
  for (std::size_t j = 0; j < M; ++j)
    circulant_row[j] = fgn_autocovariance(
        static_cast<double>(std::min(j, M - j)), hurst);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, circulant_row);

  std::vector<double> eigenvalues(M);
  double max_eigenvalue = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    eigenvalues[j] = spectrum[j].real();
    max_eigenvalue = std::max(max_eigenvalue, eigenvalues[j]);
  }
  for (double& value : eigenvalues) {
    if (value < 0.0) {
      if (value < -1e-8 * max_eigenvalue)
        throw degenerate_error("circulant embedding is not nonnegative");
      value = 0.0;  // numerical noise
    }
  }

  std::normal_distribution<double> normal;
  const double inv_m = 1.0 / static_cast<double>(M);
  std::vector<std::complex<double>> weights(M);
  weights[0] = std::sqrt(eigenvalues[0] * inv_m) * normal(rng);
  weights[m] = std::sqrt(eigenvalues[m] * inv_m) * normal(rng);
  for (std::size_t k = 1; k < m; ++k) {
    const double scale = std::sqrt(eigenvalues[k] * inv_m * 0.5);
    const double re = normal(rng);
    const double im = normal(rng);
    weights[k] = std::complex<double>(scale * re, scale * im);
    weights[M - k] = std::conj(weights[k]);
  }

  std::vector<std::complex<double>> field;
  fft.fwd(field, weights);
  std::vector<double> noise(n);
  for (std::size_t j = 0; j < n; ++j) noise[j] = field[j].real();
  return noise;
}

// Power-law normalization over the bounded support [kmin, kmax]. A node's
// degree cannot exceed the graph size, so the correct likelihood sums over
// the observed range only; an unbounded zeta normalization would blame the
// exponent for tail mass the graph can never produce and steepen the fit.
// Direct summation is valid for every exponent, including alpha <= 1.
double truncated_zeta(double alpha, double kmin, double kmax) {
  double total = 0.0;
  for (double k = kmin; k <= kmax; k += 1.0) total += std::pow(k, -alpha);
  return total;
}

// Discrete power-law log-likelihood of the tail, up to constants.
double tail_log_likelihood(double alpha, double kmin, double kmax,
                           std::size_t count, double sum_log) {
  return -static_cast<double>(count) *
             std::log(truncated_zeta(alpha, kmin, kmax)) -
         alpha * sum_log;
}

// Golden-section maximization; the likelihood is concave in the exponent.
double fit_alpha(double kmin, double kmax, std::size_t count,
                 double sum_log) {
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.05, hi = 12.0;
  double a = hi - kInvPhi * (hi - lo);
  double b = lo + kInvPhi * (hi - lo);
  double fa = tail_log_likelihood(a, kmin, kmax, count, sum_log);
  double fb = tail_log_likelihood(b, kmin, kmax, count, sum_log);
  for (int iteration = 0; iteration < 90; ++iteration) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kInvPhi * (hi - lo);
      fb = tail_log_likelihood(b, kmin, kmax, count, sum_log);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kInvPhi * (hi - lo);
      fa = tail_log_likelihood(a, kmin, kmax, count, sum_log);
    }
  }
  return 0.5 * (lo + hi);
}

double quantile_sorted(const std::vector<double>& sorted, double level) {
  const double position = level * static_cast<double>(sorted.size() - 1);
  const std::size_t lower = static_cast<std::size_t>(position);
  if (lower + 1 >= sorted.size()) return sorted.back();
  const double fraction = position - static_cast<double>(lower);
  return sorted[lower] + fraction * (sorted[lower + 1] - sorted[lower]);
}

std::string format_level(double level) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%g", level);
  return buffer;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t state) {
  state += 0x9e3779b97f4a7c15ULL;
  state = (state ^ (state >> 30)) * 0xbf58476d1ce4e5b9ULL;
  state = (state ^ (state >> 27)) * 0x94d049bb133111ebULL;
  return state ^ (state >> 31);
}

TimeSeries generate(const GeneratorSpec& spec) {
  if (spec.length < 2)
    throw size_error("generated series needs length >= 2");
  if (spec.kind == GeneratorKind::multiplicative_walk && spec.sigma < 0.0)
    throw domain_error("per-step volatility must be nonnegative");
  if (spec.kind == GeneratorKind::fbm &&
      (spec.hurst <= 0.0 || spec.hurst >= 1.0))
    throw domain_error("Hurst exponent must lie in (0, 1)");

  TimeSeries series;
  series.entity_id = kind_name(spec.kind);
  series.values.resize(spec.length);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;

  switch (spec.kind) {
    case GeneratorKind::white_noise:
      for (double& value : series.values) value = normal(rng);
      break;
    case GeneratorKind::additive_walk: {
      series.values[0] = 0.0;
      for (std::size_t t = 1; t < spec.length; ++t)
        series.values[t] = series.values[t - 1] + spec.mu + normal(rng);
      break;
    }
    case GeneratorKind::multiplicative_walk: {
      series.values[0] = 1.0;
      for (std::size_t t = 1; t < spec.length; ++t)
        series.values[t] =
            series.values[t - 1] * std::exp(spec.mu + spec.sigma * normal(rng));
      break;
    }
    case GeneratorKind::fbm: {
      const std::vector<double> noise =
          synthesize_fgn(spec.length, spec.hurst, rng);
      double level = 0.0;
      for (std::size_t t = 0; t < spec.length; ++t) {
        level += noise[t];
        series.values[t] = level;
      }
      break;
    }
  }
  return series;
}

NullBaseline baseline(const GeneratorSpec& model, std::size_t n,
                      std::size_t trials, GraphKind kind,
                      const DivergenceConfig& config) {
  if (trials < 30)
    throw insufficient_data_error("baseline requires at least 30 trials");

  DivergenceConfig trial_config = config;
  if (trial_config.bias == BiasRule::one_over_n) trial_config.n = n;

  std::vector<double> values;
  values.reserve(trials);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    GeneratorSpec trial_spec = model;
    trial_spec.length = n;
    trial_spec.seed = splitmix64(model.seed + trial);
    const TimeSeries series = generate(trial_spec);
    values.push_back(window_irreversibility(series.values, kind, trial_config));
  }
  std::sort(values.begin(), values.end());

  NullBaseline result;
  result.model = model;
  result.model.length = n;
  result.n = n;
  result.trials = trials;
  for (const double level : {0.5, 0.95, 0.99})
    result.quantiles[level] = quantile_sorted(values, level);
  return result;
}

std::string baseline_to_json(const NullBaseline& b) {
  nlohmann::ordered_json model;
  model["kind"] = kind_name(b.model.kind);
  model["length"] = b.model.length;
  switch (b.model.kind) {
    case GeneratorKind::additive_walk:
      model["mu"] = b.model.mu;
      break;
    case GeneratorKind::multiplicative_walk:
      model["mu"] = b.model.mu;
      model["sigma"] = b.model.sigma;
      break;
    case GeneratorKind::fbm:
      model["hurst"] = b.model.hurst;
      break;
    case GeneratorKind::white_noise:
      break;
  }
  model["seed"] = b.model.seed;

  nlohmann::ordered_json doc;
  doc["model"] = model;
  doc["n"] = b.n;
  doc["trials"] = b.trials;
  nlohmann::ordered_json quantiles;
  for (const auto& [level, value] : b.quantiles)
    quantiles[format_level(level)] = value;
  doc["quantiles"] = quantiles;
  return doc.dump(2);
}

double vg_tail_exponent(const TimeSeries& s) {
  if (s.size() < 4096)
    throw size_error("tail fit requires at least 4096 samples");

  const DirectedVisibilityGraph graph = vg_build(s.values);
  std::vector<std::uint32_t> degrees = total_degrees(graph);
  std::sort(degrees.begin(), degrees.end());

  std::vector<std::uint32_t> distinct(degrees.begin(), degrees.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() < 3)
    throw degenerate_error("degree distribution has no tail to fit");

  // Maximum-likelihood exponent for every admissible cutoff; keep the
  // cutoff whose fitted tail is closest to the data in Kolmogorov-Smirnov
  // distance. A cutoff is admissible only while its tail keeps at least a
  // quarter of the nodes (and never fewer than 50): deeper tails are bent
  // by the finite graph size, and chasing their locally small KS distances
  // would select arbitrarily steep exponents.
  const double kmax = static_cast<double>(degrees.back());
  const std::size_t tail_floor =
      std::max<std::size_t>(50, degrees.size() / 4);
  double best_alpha = 0.0;
  double best_ks = std::numeric_limits<double>::infinity();
  bool fitted = false;
  for (std::size_t candidate = 0; candidate < distinct.size(); ++candidate) {
    const std::uint32_t cutoff = distinct[candidate];
    if (cutoff < 2) continue;
    if (distinct.size() - candidate < 3) break;  // one or two degree values
                                                 // cannot pin an exponent
    const auto tail_begin =
        std::lower_bound(degrees.begin(), degrees.end(), cutoff);
    const std::size_t tail_count =
        static_cast<std::size_t>(degrees.end() - tail_begin);
    if (tail_count < tail_floor) break;  // degrees are sorted: tails shrink

    double sum_log = 0.0;
    for (auto it = tail_begin; it != degrees.end(); ++it)
      sum_log += std::log(static_cast<double>(*it));

    const double kmin = static_cast<double>(cutoff);
    const double alpha = fit_alpha(kmin, kmax, tail_count, sum_log);

    const double tail_norm = truncated_zeta(alpha, kmin, kmax);
    double ks = 0.0;
    std::size_t seen = 0;
    for (auto it = tail_begin; it != degrees.end();) {
      auto next = std::upper_bound(it, degrees.end(), *it);
      seen += static_cast<std::size_t>(next - it);
      const double empirical =
          static_cast<double>(seen) / static_cast<double>(tail_count);
      const double model =
          1.0 -
          truncated_zeta(alpha, static_cast<double>(*it) + 1.0, kmax) /
              tail_norm;
      ks = std::max(ks, std::abs(empirical - model));
      it = next;
    }
    if (ks < best_ks) {
      best_ks = ks;
      best_alpha = alpha;
      fitted = true;
    }
  }
  if (!fitted)
    throw degenerate_error("no cutoff leaves a fittable tail");
  return best_alpha;
}

}  // namespace irrevis
