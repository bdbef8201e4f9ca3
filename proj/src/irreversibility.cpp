#include "irrevis/irreversibility.hpp"

#include <cmath>
#include <ostream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "irrevis/errors.hpp"

namespace irrevis {

namespace {

struct SupportPoint {
  std::uint32_t value;
  double p;
  double q;
};

// Merge-walk of the two ascending supports; absent points carry mass zero.
std::vector<SupportPoint> union_support(const DegreeDistribution& p,
                                        const DegreeDistribution& q) {
  std::vector<SupportPoint> merged;
  merged.reserve(p.support.size() + q.support.size());
  std::size_t i = 0, j = 0;
  while (i < p.support.size() || j < q.support.size()) {
    const bool take_p =
        j >= q.support.size() ||
        (i < p.support.size() && p.support[i] <= q.support[j]);
    const bool take_q =
        i >= p.support.size() ||
        (j < q.support.size() && q.support[j] <= p.support[i]);
    SupportPoint point{0, 0.0, 0.0};
    if (take_p) {
      point.value = p.support[i];
      point.p = p.mass[i];
      ++i;
    }
    if (take_q) {
      point.value = q.support[j];
      point.q = q.mass[j];
      ++j;
    }
    merged.push_back(point);
  }
  return merged;
}

double mean(const std::vector<double>& values) {
  double total = 0.0;
  for (const double v : values) total += v;
  return total / static_cast<double>(values.size());
}

}  // namespace

double kld(const DegreeDistribution& p, const DegreeDistribution& q,
           const DivergenceConfig& config) {
  const auto merged = union_support(p, q);

  if (config.bias == BiasRule::none) {
    double divergence = 0.0;
    for (const auto& point : merged) {
      if (point.p <= 0.0) continue;
      if (point.q <= 0.0)
        throw divergence_error(
            "infinite divergence: support point with p > 0 and q = 0");
      divergence += point.p * std::log(point.p / point.q);
    }
    return divergence;
  }

  if (config.n < 2)
    throw config_error("one_over_n bias requires window size n >= 2");
  const double floor_mass = 1.0 / static_cast<double>(config.n);
  double p_total = 0.0, q_total = 0.0;
  for (const auto& point : merged) {
    p_total += point.p > 0.0 ? point.p : floor_mass;
    q_total += point.q > 0.0 ? point.q : floor_mass;
  }
  double divergence = 0.0;
  for (const auto& point : merged) {
    const double pm = (point.p > 0.0 ? point.p : floor_mass) / p_total;
    const double qm = (point.q > 0.0 ? point.q : floor_mass) / q_total;
    divergence += pm * std::log(pm / qm);
  }
  return divergence;
}

double l1_divergence(const DegreeDistribution& p,
                     const DegreeDistribution& q) {
  double distance = 0.0;
  for (const auto& point : union_support(p, q))
    distance += std::abs(point.p - point.q);
  return distance;
}

double window_irreversibility(std::span<const double> window, GraphKind kind,
                              const DivergenceConfig& config) {
  const DirectedVisibilityGraph graph =
      kind == GraphKind::vg ? vg_build(window) : hvg_build(window);
  const DegreeSequences degrees = degree_sequences(graph);
  const DegreeDistribution in = degree_distribution(degrees.in);
  const DegreeDistribution out = degree_distribution(degrees.out);
  return config.kind == DivergenceKind::kld ? kld(in, out, config)
                                            : l1_divergence(in, out);
}

IrreversibilityProfile irreversibility_profile(const TimeSeries& s,
                                               std::size_t n, GraphKind kind,
                                               const DivergenceConfig& config) {
  const auto windows = partition_windows(s, n);
  if (windows.empty())
    throw insufficient_data_error("series shorter than one window");
  DivergenceConfig cfg = config;
  if (cfg.bias == BiasRule::one_over_n) cfg.n = n;  // bias follows window size
  IrreversibilityProfile profile;
  profile.entity_id = s.entity_id;
  profile.granularity = Granularity::window;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    profile.keys.push_back(static_cast<std::int64_t>(w));
    profile.values.push_back(
        window_irreversibility(windows[w].values, kind, cfg));
  }
  return profile;
}

IrreversibilityProfile annual_irreversibility(const TimeSeries& s,
                                              std::size_t n, GraphKind kind,
                                              const DivergenceConfig& config) {
  DivergenceConfig cfg = config;
  if (cfg.bias == BiasRule::one_over_n) cfg.n = n;  // bias follows window size
  IrreversibilityProfile profile;
  profile.entity_id = s.entity_id;
  profile.granularity = Granularity::year;
  for (const auto& [year, year_series] : partition_years(s)) {
    const auto windows = partition_windows(year_series, n);
    if (windows.empty()) continue;  // years without a complete window
    std::vector<double> per_window;
    per_window.reserve(windows.size());
    for (const auto& window : windows)
      per_window.push_back(window_irreversibility(window.values, kind, cfg));
    profile.keys.push_back(year);
    profile.values.push_back(mean(per_window));
  }
  if (profile.keys.empty())
    throw insufficient_data_error("no year contains a complete window");
  return profile;
}

void write_profile_csv(std::ostream& out, const IrreversibilityProfile& p) {
  char buffer[32];
  out << "entity,key,value\n";
  for (std::size_t i = 0; i < p.keys.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", p.values[i]);
    out << p.entity_id << ',' << p.keys[i] << ',' << buffer << '\n';
  }
}

std::string profile_to_json(const IrreversibilityProfile& p) {
  nlohmann::ordered_json doc;
  doc["entity"] = p.entity_id;
  doc["granularity"] =
      p.granularity == Granularity::window ? "window" : "year";
  doc["keys"] = p.keys;
  doc["values"] = p.values;
  return doc.dump(2);
}

}  // namespace irrevis
