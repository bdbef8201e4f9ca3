#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "irrevis/series.hpp"
#include "irrevis/visibility.hpp"

namespace irrevis {

enum class DivergenceKind { kld, l1 };

/// Finite-size correction for empirical distributions: `one_over_n` replaces
/// zero masses on the union support by 1/n (n = window size) and
/// renormalizes each distribution before comparing; `none` uses the raw
/// masses and fails when the divergence is infinite.
enum class BiasRule { none, one_over_n };

struct DivergenceConfig {
  DivergenceKind kind = DivergenceKind::kld;
  BiasRule bias = BiasRule::one_over_n;
  std::size_t n = 0;  ///< window size backing the 1/n rule; >= 2 when used
};

/// Kullback-Leibler divergence D(p || q) in nats over the union support.
/// With bias none, a point where p > 0 but q = 0 makes the divergence
/// infinite and raises divergence_error. bias one_over_n requires
/// config.n >= 2 (config_error).
double kld(const DegreeDistribution& p, const DegreeDistribution& q,
           const DivergenceConfig& config = {});

/// L1 distance sum |p - q| over the union support. Always finite; ignores
/// the bias rule.
double l1_divergence(const DegreeDistribution& p, const DegreeDistribution& q);

/// Irreversibility of one window: the configured divergence between the
/// in-degree and out-degree distributions, D(P_in || P_out), of its
/// visibility graph.
double window_irreversibility(std::span<const double> window, GraphKind kind,
                              const DivergenceConfig& config);

enum class Granularity { window, year };

/// Irreversibility values per window index or per calendar year for one
/// entity. `keys` are window ordinals (0-based) or years, ascending.
struct IrreversibilityProfile {
  std::string entity_id;
  Granularity granularity = Granularity::window;
  std::vector<std::int64_t> keys;
  std::vector<double> values;
};

/// Per-window profile over consecutive windows of size n covering the whole
/// series (remainder discarded). Requires at least one full window
/// (insufficient_data_error).
IrreversibilityProfile irreversibility_profile(const TimeSeries& s,
                                               std::size_t n, GraphKind kind,
                                               const DivergenceConfig& config);

/// Per-year profile: each year's value is the mean over the windows fully
/// contained in that year; years contributing zero complete windows are
/// omitted. Requires timestamps (config_error); raises
/// insufficient_data_error when no year yields a window.
IrreversibilityProfile annual_irreversibility(const TimeSeries& s,
                                              std::size_t n, GraphKind kind,
                                              const DivergenceConfig& config);

/// Writes a profile as CSV rows `entity,key,value`.
void write_profile_csv(std::ostream& out, const IrreversibilityProfile& p);

/// JSON form carrying the same content as the CSV.
std::string profile_to_json(const IrreversibilityProfile& p);

}  // namespace irrevis
