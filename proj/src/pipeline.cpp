#include "irrevis/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <thread>
#include <vector>

#include "irrevis/errors.hpp"

namespace irrevis {

namespace {

std::string sanitize_filename(const std::string& name) {
  std::string safe;
  safe.reserve(name.size());
  for (const char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '-' ||
                    c == '_';
    safe.push_back(ok ? c : '_');
  }
  return safe.empty() ? "_" : safe;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw error("cannot open output file '" + path.string() + "'");
  return out;
}

// Index-based work sharing; results are written per index, so the outcome
// does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  unsigned workers = threads ? threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) break;
          fn(i);
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  for (const auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

struct EntityResult {
  IrreversibilityProfile window_profile;
  IrreversibilityProfile annual_profile;
  double avg_volatility = 0.0;
};

ParseResult load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open input file '" + path + "'");
  return parse_price_csv(in);
}

}  // namespace

int run_analyze(const RunConfig& config, std::ostream& err) {
  try {
    const ParseResult parsed = load_input(config.input_path);
    if (parsed.series.empty()) {
      err << "analyze: input contains no data rows\n";
      return 2;
    }
    if (parsed.dropped_rows > 0)
      err << "analyze: dropped " << parsed.dropped_rows << " unusable rows\n";

    std::vector<const TimeSeries*> series;
    series.reserve(parsed.series.size());
    for (const auto& [entity, s] : parsed.series) series.push_back(&s);

    DivergenceConfig divergence{config.divergence, config.bias, config.window};

    // Entities are independent; results land in per-index slots.
    std::vector<EntityResult> results(series.size());
    parallel_for(series.size(), config.threads, [&](std::size_t i) {
      const TimeSeries& s = *series[i];
      EntityResult& result = results[i];
      result.window_profile = irreversibility_profile(
          s, config.window, config.graph, divergence);
      result.annual_profile =
          annual_irreversibility(s, config.window, config.graph, divergence);

      double volatility_sum = 0.0;
      std::size_t volatility_years = 0;
      for (const std::int64_t year : result.annual_profile.keys) {
        try {
          volatility_sum +=
              annualized_volatility(s, static_cast<int>(year));
          ++volatility_years;
        } catch (const insufficient_data_error&) {
          // a year can hold one full window yet too few points to
          // measure volatility; leave it out of the average
        }
      }
      result.avg_volatility =
          volatility_years ? volatility_sum /
                                 static_cast<double>(volatility_years)
                           : 0.0;
    });

    const std::filesystem::path out_dir(config.output_dir);
    std::filesystem::create_directories(out_dir);

    std::map<std::string, IrreversibilityProfile> annual_profiles;
    std::vector<CompanyReport> reports;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const std::string& entity = series[i]->entity_id;
      annual_profiles[entity] = results[i].annual_profile;

      auto out = open_output(
          out_dir / ("profile_window_" + sanitize_filename(entity) + ".csv"));
      write_profile_csv(out, results[i].window_profile);

      CompanyReport report;
      report.entity_id = entity;
      report.score = score(results[i].annual_profile);
      report.irr_variance = results[i].annual_profile.values.size() >= 2
                                ? irr_variance(results[i].annual_profile)
                                : 0.0;
      report.avg_volatility = results[i].avg_volatility;
      reports.push_back(report);
    }

    {
      auto out = open_output(out_dir / "profile_annual.csv");
      out << "entity,key,value\n";
      for (const auto& [entity, profile] : annual_profiles)
        for (std::size_t i = 0; i < profile.keys.size(); ++i)
          out << entity << ',' << profile.keys[i] << ','
              << format_double(profile.values[i]) << '\n';
    }

    reports = rank_entities(std::move(reports));
    {
      auto out = open_output(out_dir / "report.csv");
      write_report_csv(out, reports);
    }

    // Years covered by every entity; PCA and the dendrogram need a dense
    // matrix.
    std::set<int> common;
    bool first = true;
    for (const auto& [entity, profile] : annual_profiles) {
      std::set<int> years;
      for (const std::int64_t year : profile.keys)
        years.insert(static_cast<int>(year));
      if (first) {
        common = std::move(years);
        first = false;
      } else {
        std::set<int> kept;
        std::set_intersection(common.begin(), common.end(), years.begin(),
                              years.end(), std::inserter(kept, kept.end()));
        common = std::move(kept);
      }
    }
    const std::vector<int> years(common.begin(), common.end());
    if (years.size() < 2) {
      err << "analyze: need at least 2 years shared by every entity\n";
      return 1;
    }

    const FeatureMatrix features =
        build_feature_matrix(annual_profiles, years);
    const std::size_t max_components =
        std::min(years.size() - 1, annual_profiles.size());
    const std::size_t m = std::min(config.pca_components, max_components);
    const PcaResult projection = pca(features, m, config.standardize);
    {
      auto out = open_output(out_dir / "pca.json");
      out << pca_to_json(projection, years) << '\n';
    }

    std::vector<std::string> labels;
    labels.reserve(years.size());
    for (const int year : years) labels.push_back(std::to_string(year));
    const Dendrogram dendrogram =
        cluster_complete(distance_matrix(features), labels);
    {
      auto out = open_output(out_dir / "dendrogram.json");
      out << dendrogram_to_json(dendrogram) << '\n';
    }
    {
      auto out = open_output(out_dir / "dendrogram.newick");
      out << dendrogram_to_newick(dendrogram) << '\n';
    }

    for (const TimeSeries* s : series) {
      auto out = open_output(
          out_dir / ("plot_" + sanitize_filename(s->entity_id) + ".csv"));
      out << "entity,timestamp,price\n";
      const std::size_t stride = std::max<std::size_t>(config.plot_stride, 1);
      for (std::size_t i = 0; i < s->size(); i += stride)
        out << s->entity_id << ','
            << (s->has_timestamps() ? s->timestamps[i]
                                    : static_cast<std::int64_t>(i))
            << ',' << format_double(s->values[i]) << '\n';
    }
    return 0;
  } catch (const std::exception& failure) {
    err << "analyze: " << failure.what() << '\n';
    return 1;
  }
}

int run_simulate(const SimulateConfig& config, std::ostream& err) {
  try {
    TimeSeries series = generate(config.spec);
    if (config.spec.kind != GeneratorKind::multiplicative_walk) {
      for (double& value : series.values) {
        const double exponent = config.price_scale * value;
        if (std::abs(exponent) > 700.0)
          throw domain_error(
              "price overflow: rescale with a smaller price_scale");
        value = std::exp(exponent);
      }
    }
    series.entity_id = config.entity;
    series.timestamps.resize(series.values.size());
    for (std::size_t i = 0; i < series.values.size(); ++i)
      series.timestamps[i] =
          config.start_epoch +
          static_cast<std::int64_t>(i) * config.step_seconds;

    auto out = open_output(config.output_path);
    write_price_csv(out, series);
    return 0;
  } catch (const std::exception& failure) {
    err << "simulate: " << failure.what() << '\n';
    return 1;
  }
}

int run_baseline(const BaselineRunConfig& config, std::ostream& err) {
  try {
    DivergenceConfig divergence{config.divergence, config.bias, config.n};
    const NullBaseline result = baseline(config.model, config.n,
                                         config.trials, config.graph,
                                         divergence);
    auto out = open_output(config.output_path);
    out << baseline_to_json(result) << '\n';
    return 0;
  } catch (const std::exception& failure) {
    err << "baseline: " << failure.what() << '\n';
    return 1;
  }
}

int run_graph_export(const GraphExportConfig& config, std::ostream& err) {
  try {
    const ParseResult parsed = load_input(config.input_path);
    if (parsed.series.empty()) {
      err << "graph-export: input contains no data rows\n";
      return 2;
    }
    const TimeSeries* chosen = nullptr;
    if (config.entity.empty()) {
      chosen = &parsed.series.begin()->second;
    } else {
      const auto it = parsed.series.find(config.entity);
      if (it == parsed.series.end())
        throw error("entity '" + config.entity + "' not present");
      chosen = &it->second;
    }

    std::span<const double> window(chosen->values);
    if (config.window > 0) {
      const auto windows = partition_windows(*chosen, config.window);
      if (config.window_index >= windows.size())
        throw error("window index out of range: series has " +
                    std::to_string(windows.size()) + " windows");
      window = windows[config.window_index].values;
    }

    const DirectedVisibilityGraph graph = config.graph == GraphKind::vg
                                              ? vg_build(window)
                                              : hvg_build(window);
    auto out = open_output(config.output_path);
    write_edge_list(out, graph);
    return 0;
  } catch (const std::exception& failure) {
    err << "graph-export: " << failure.what() << '\n';
    return 1;
  }
}

}  // namespace irrevis
