#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "irrevis/irreversibility.hpp"
#include "irrevis/series.hpp"

namespace irrevis {

enum class GeneratorKind { white_noise, additive_walk, multiplicative_walk, fbm };

/// Parameters of a synthetic series. Fields are read per kind:
///   white_noise          -- none
///   additive_walk        -- mu (per-step bias; unit Gaussian steps)
///   multiplicative_walk  -- mu (log drift), sigma (per-step volatility)
///   fbm                  -- hurst in (0, 1)
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::white_noise;
  std::size_t length = 0;
  double mu = 0.0;
  double sigma = 0.01;
  double hurst = 0.5;
  std::uint64_t seed = 0;
};

/// Deterministic synthesis: the same spec always yields the same series.
///   white_noise          x(t)   i.i.d. standard Gaussian
///   additive_walk        x(t+1) = x(t) + mu + g(t), x(0) = 0
///   multiplicative_walk  x(t+1) = x(t) * exp(mu + sigma * g(t)), x(0) = 1
///   fbm                  cumulated fractional Gaussian noise, synthesized
///                        exactly by circulant embedding of the fGn
///                        autocovariance (unit increment variance)
/// Requires length >= 2 (size_error); sigma >= 0 and hurst in (0, 1)
/// (domain_error).
TimeSeries generate(const GeneratorSpec& spec);

/// Mixes a base seed with a trial index into an independent stream seed.
std::uint64_t splitmix64(std::uint64_t state);

/// Null-model irreversibility baseline: quantiles of
/// window_irreversibility over independent trials of length n. Per-trial
/// seeds are splitmix64(seed + trial). Requires trials >= 30
/// (insufficient_data_error).
struct NullBaseline {
  GeneratorSpec model;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::map<double, double> quantiles;  ///< level -> value, levels {.5,.95,.99}
};

NullBaseline baseline(const GeneratorSpec& model, std::size_t n,
                      std::size_t trials, GraphKind kind,
                      const DivergenceConfig& config);

/// JSON document {model, n, trials, quantiles}.
std::string baseline_to_json(const NullBaseline& b);

/// Power-law exponent of the undirected degree distribution of the natural
/// visibility graph: discrete maximum-likelihood fit of the tail normalized
/// over the observed degree range, with the lower cutoff chosen by
/// Kolmogorov-Smirnov minimization among cutoffs whose tail keeps at least
/// a quarter of the nodes (never fewer than 50). Requires length >= 4096
/// (size_error); a distribution without a usable tail raises
/// degenerate_error.
double vg_tail_exponent(const TimeSeries& s);

}  // namespace irrevis
