// Release gate. Every check below is a standalone criterion that prints one
// [PASS]/[FAIL] line; the exit status is the number of failures. Run without
// arguments for the whole gate, or pass criterion numbers to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irrevis/analytics.hpp"
#include "irrevis/errors.hpp"
#include "irrevis/irreversibility.hpp"
#include "irrevis/nullmodels.hpp"
#include "irrevis/pipeline.hpp"
#include "irrevis/series.hpp"
#include "irrevis/visibility.hpp"
#include "oracles.hpp"

using namespace irrevis;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string strf(const char* fmt, Args... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, fmt, args...);
  return buffer;
}

double seconds_since(const std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "irrevis_accept" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Deterministic corpus mixing i.i.d. Gaussian samples, unbiased walks and
// fractional noise cumulations over three memory regimes.
std::vector<std::vector<double>> mixed_corpus(std::size_t count,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length(16, 512);
  std::vector<std::vector<double>> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = length(rng);
    const std::uint64_t series_seed = rng();
    switch (i % 5) {
      case 0:
        corpus.push_back(oracle::gaussian_series(n, series_seed));
        break;
      case 1:
        corpus.push_back(oracle::walk_series(n, series_seed));
        break;
      default: {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::fbm;
        spec.length = n;
        spec.hurst = (i % 5 == 2) ? 0.3 : (i % 5 == 3) ? 0.5 : 0.8;
        spec.seed = series_seed;
        corpus.push_back(generate(spec).values);
        break;
      }
    }
  }
  return corpus;
}

// 1. The fast constructions must reproduce the naive ones edge for edge on a
// 200-series mixed corpus, within a 10 s budget.
Outcome check_construction_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = mixed_corpus(200, 91);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& x = corpus[i];
    if (vg_build(x, VgAlgorithm::divide_and_conquer).out_neighbors !=
        vg_build(x, VgAlgorithm::naive).out_neighbors)
      return {false, strf("VG mismatch on series %zu (n=%zu)", i, x.size())};
    if (hvg_build(x, HvgAlgorithm::stack).out_neighbors !=
        hvg_build(x, HvgAlgorithm::naive).out_neighbors)
      return {false, strf("HVG mismatch on series %zu (n=%zu)", i, x.size())};
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) return {false, strf("took %.2f s (budget 10 s)", elapsed)};
  return {true, strf("200 series in %.2f s", elapsed)};
}

// 2. Every horizontal edge must also be a natural-visibility edge on the
// same corpus.
Outcome check_subgraph_law() {
  const auto corpus = mixed_corpus(200, 91);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto vg = vg_build(corpus[i]);
    const auto hvg = hvg_build(corpus[i]);
    for (std::size_t node = 0; node < hvg.node_count; ++node)
      if (!std::includes(vg.out_neighbors[node].begin(),
                         vg.out_neighbors[node].end(),
                         hvg.out_neighbors[node].begin(),
                         hvg.out_neighbors[node].end()))
        return {false, strf("series %zu node %zu has a horizontal edge "
                            "missing from the natural graph", i, node)};
  }
  return {true, "200 series"};
}

// 3. The natural graph may not change under positive affine maps, nor the
// horizontal graph under strictly increasing maps.
Outcome check_invariance() {
  std::mt19937_64 rng(311);
  std::uniform_int_distribution<std::size_t> length(16, 512);
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = length(rng);
    const std::uint64_t seed = rng();
    std::vector<double> x;
    switch (i % 3) {
      case 0: x = oracle::gaussian_series(n, seed); break;
      case 1: x = oracle::walk_series(n, seed); break;
      default: x = oracle::integer_series(n, seed, 0, 6); break;
    }

    const auto vg = vg_build(x);
    for (const double a : {0.5, 3.0})
      for (const double b : {-7.0, 100.0}) {
        std::vector<double> mapped(x.size());
        for (std::size_t t = 0; t < x.size(); ++t) mapped[t] = a * x[t] + b;
        if (vg_build(mapped).out_neighbors != vg.out_neighbors)
          return {false, strf("VG changed under %g*x%+g on series %zu", a, b, i)};
      }

    const auto hvg = hvg_build(x);
    std::vector<double> cubed(x.size()), exponentiated(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
      cubed[t] = x[t] * x[t] * x[t];
      exponentiated[t] = std::exp(x[t]);
    }
    if (hvg_build(cubed).out_neighbors != hvg.out_neighbors)
      return {false, strf("HVG changed under x^3 on series %zu", i)};
    if (hvg_build(exponentiated).out_neighbors != hvg.out_neighbors)
      return {false, strf("HVG changed under exp(x) on series %zu", i)};
  }
  return {true, "100 series, all maps"};
}

// 4. The in-degree distribution of a window must equal the out-degree
// distribution of the reversed window exactly, for both graph kinds.
Outcome check_reversal_identity() {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> length(16, 512);
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = length(rng);
    const std::uint64_t seed = rng();
    const std::vector<double> x = (i % 2 == 0)
                                      ? oracle::walk_series(n, seed)
                                      : oracle::integer_series(n, seed, 0, 4);
    std::vector<double> reversed(x.rbegin(), x.rend());

    for (const GraphKind kind : {GraphKind::vg, GraphKind::hvg}) {
      const auto build = [kind](const std::vector<double>& w) {
        return kind == GraphKind::vg ? vg_build(w) : hvg_build(w);
      };
      const DegreeSequences forward = degree_sequences(build(x));
      const DegreeSequences backward = degree_sequences(build(reversed));
      const DegreeDistribution in_law = degree_distribution(forward.in);
      const DegreeDistribution out_law = degree_distribution(backward.out);
      if (in_law.support != out_law.support || in_law.mass != out_law.mass)
        return {false, strf("distributions differ on series %zu (%s)", i,
                            kind == GraphKind::vg ? "vg" : "hvg")};
    }
  }
  return {true, "100 windows, both kinds"};
}

// 5. Divergence hand values: zero on identical inputs, the worked
// finite-sample example, the exact l1 example, and the required failure on
// a support violation without the bias rule.
Outcome check_divergence_values() {
  const DegreeDistribution p{{0, 1, 3}, {0.2, 0.6, 0.2}};
  const DegreeDistribution q{{0, 1, 2}, {0.2, 0.4, 0.4}};
  const DivergenceConfig raw{DivergenceKind::kld, BiasRule::none, 0};
  const DivergenceConfig biased{DivergenceKind::kld, BiasRule::one_over_n, 5};

  if (kld(p, p, raw) != 0.0) return {false, "KLD(p,p) != 0"};

  const double example = kld(p, q, biased);
  if (std::abs(example - 0.0872) > 1e-4)
    return {false, strf("biased example gave %.6f, want 0.0872 +- 1e-4",
                        example)};

  const double l1 = l1_divergence(p, q);
  if (l1 != 0.8) return {false, strf("l1 example gave %.17g, want 0.8", l1)};

  bool raised = false;
  try {
    kld(p, q, raw);
  } catch (const divergence_error&) {
    raised = true;
  }
  if (!raised) return {false, "support violation did not raise"};
  return {true, strf("biased example %.6f", example)};
}

// 6. Reversible-null behaviour: the unbiased-walk median irreversibility
// must shrink from n=500 to n=5000, and the drifted multiplicative model
// must sit above the walk's 95th percentile at n=5000. Budget 5 min.
Outcome check_null_separation() {
  const auto start = std::chrono::steady_clock::now();
  const DivergenceConfig config;  // KLD with the 1/n rule

  GeneratorSpec walk;
  walk.kind = GeneratorKind::additive_walk;
  walk.mu = 0.0;
  walk.seed = 67001;
  const NullBaseline walk500 = baseline(walk, 500, 100, GraphKind::vg, config);
  const NullBaseline walk5000 =
      baseline(walk, 5000, 100, GraphKind::vg, config);

  GeneratorSpec gbm;
  gbm.kind = GeneratorKind::multiplicative_walk;
  gbm.mu = 5e-4;
  gbm.sigma = 0.01;
  gbm.seed = 67002;
  const NullBaseline gbm5000 = baseline(gbm, 5000, 100, GraphKind::vg, config);

  const double walk_median_500 = walk500.quantiles.at(0.5);
  const double walk_median_5000 = walk5000.quantiles.at(0.5);
  const double walk_p95_5000 = walk5000.quantiles.at(0.95);
  const double gbm_median_5000 = gbm5000.quantiles.at(0.5);

  if (!(walk_median_5000 < walk_median_500))
    return {false, strf("walk median rose: %.4g at n=500 vs %.4g at n=5000",
                        walk_median_500, walk_median_5000)};
  if (!(gbm_median_5000 > walk_p95_5000))
    return {false,
            strf("multiplicative median %.4g does not clear walk p95 %.4g",
                 gbm_median_5000, walk_p95_5000)};
  const double elapsed = seconds_since(start);
  if (elapsed >= 300.0)
    return {false, strf("took %.1f s (budget 300 s)", elapsed)};
  return {true, strf("walk %.4g->%.4g, multiplicative %.4g > p95 %.4g, %.1f s",
                     walk_median_500, walk_median_5000, gbm_median_5000,
                     walk_p95_5000, elapsed)};
}

// 7. Fractional-noise degree tails: the mean fitted exponent over 20 seeds
// at length 2^14 must land within 0.3 of 3 - 2H. Budget 10 min.
Outcome check_tail_exponent() {
  const auto start = std::chrono::steady_clock::now();
  std::string summary;
  for (const double hurst : {0.5, 0.8}) {
    const double target = 3.0 - 2.0 * hurst;
    double total = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      GeneratorSpec spec;
      spec.kind = GeneratorKind::fbm;
      spec.length = 16384;
      spec.hurst = hurst;
      spec.seed = 7000 + 100 * static_cast<std::uint64_t>(hurst * 10) + trial;
      total += vg_tail_exponent(generate(spec));
    }
    const double mean = total / 20.0;
    if (std::abs(mean - target) > 0.3)
      return {false, strf("H=%.1f mean exponent %.3f, want %.1f +- 0.3",
                          hurst, mean, target)};
    summary += strf("H=%.1f: %.3f (want %.1f)  ", hurst, mean, target);
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 600.0)
    return {false, strf("took %.1f s (budget 600 s)", elapsed)};
  return {true, summary + strf("in %.1f s", elapsed)};
}

// 8. Analytics against an independent statistics oracle, the variance-ratio
// normalization of the projection, and the hand-derived merge list.
Outcome check_analytics() {
  std::mt19937_64 rng(88);
  std::normal_distribution<double> normal;

  for (int round = 0; round < 10; ++round) {
    IrreversibilityProfile profile;
    profile.entity_id = "x";
    const std::size_t n = 5 + static_cast<std::size_t>(round) * 5;
    for (std::size_t i = 0; i < n; ++i) {
      profile.keys.push_back(static_cast<std::int64_t>(i));
      profile.values.push_back(std::abs(normal(rng)));
    }
    if (std::abs(score(profile) - oracle::mean(profile.values)) > 1e-12)
      return {false, "score deviates from the oracle mean"};
    if (std::abs(irr_variance(profile) -
                 oracle::population_variance(profile.values)) > 1e-12)
      return {false, "variance deviates from the oracle"};

    std::vector<double> x(100), y(100);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = normal(rng);
      y[i] = 0.3 * x[i] + normal(rng);
    }
    if (std::abs(pearson_r2(x, y) - oracle::pearson_r2(x, y)) > 1e-12)
      return {false, "r^2 deviates from the oracle"};
  }

  FeatureMatrix random_features;
  random_features.years = {0, 1, 2, 3, 4, 5, 6, 7};
  random_features.entities = {"a", "b", "c", "d", "e"};
  random_features.values = Eigen::MatrixXd(8, 5);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 5; ++c) random_features.values(r, c) = normal(rng);
  const PcaResult full = pca(random_features, 5);
  double ratio_total = 0.0;
  for (const double ratio : full.explained_variance_ratio)
    ratio_total += ratio;
  if (std::abs(ratio_total - 1.0) > 1e-9)
    return {false, strf("variance ratios sum to %.12f", ratio_total)};

  FeatureMatrix rank1 = random_features;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 5; ++c)
      rank1.values(r, c) = (1.0 + 0.25 * r) * (2.0 - 0.5 * c);
  const PcaResult dominant = pca(rank1, 2);
  if (std::abs(dominant.explained_variance_ratio[0] - 1.0) > 1e-9)
    return {false, strf("rank-1 first ratio %.12f",
                        dominant.explained_variance_ratio[0])};

  FeatureMatrix line;
  line.years = {0, 1, 2, 3};
  line.entities = {"f"};
  line.values = Eigen::MatrixXd(4, 1);
  line.values << 0, 1, 10, 11;
  const Dendrogram tree =
      cluster_complete(distance_matrix(line), {"0", "1", "10", "11"});
  const std::vector<Merge> expected = {{0, 1, 1.0}, {2, 3, 1.0}, {4, 5, 11.0}};
  if (tree.merges.size() != expected.size())
    return {false, "unexpected merge count"};
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (tree.merges[i].a != expected[i].a || tree.merges[i].b != expected[i].b ||
        tree.merges[i].height != expected[i].height)
      return {false, strf("merge %zu is (%zu,%zu)@%g", i, tree.merges[i].a,
                          tree.merges[i].b, tree.merges[i].height)};
  return {true, ""};
}

constexpr int kCrisisYears[] = {2001, 2002, 2009};

std::int64_t year_start_epoch(int year) {
  using namespace std::chrono;
  return sys_days{std::chrono::year{year} / January / 1}
             .time_since_epoch()
             .count() *
         std::int64_t{86400};
}

// 35 entities, 15 calendar years, 6700 intra-year samples per (entity, year)
// block so each year holds exactly one complete 5000-point window. The three
// designated years follow a strongly drifted multiplicative regime (the
// drift-to-volatility ratio 0.2 keeps the irreversibility band of crisis
// years clear of the walk band); every other year is an unbiased additive
// walk shifted to a positive level.
fs::path write_regime_fixture(const fs::path& dir, std::uint64_t seed) {
  const fs::path csv = dir / "input.csv";
  std::ofstream out(csv, std::ios::binary);
  out << "entity,timestamp,price\n";
  for (int e = 0; e < 35; ++e) {
    char entity[8];
    std::snprintf(entity, sizeof entity, "E%02d", e);
    for (int y = 0; y < 15; ++y) {
      const int year = 1998 + y;
      const bool crisis =
          std::find(std::begin(kCrisisYears), std::end(kCrisisYears), year) !=
          std::end(kCrisisYears);
      GeneratorSpec spec;
      spec.kind = crisis ? GeneratorKind::multiplicative_walk
                         : GeneratorKind::additive_walk;
      spec.length = 6700;
      spec.mu = crisis ? 2e-3 : 0.0;
      spec.sigma = 0.01;
      spec.seed = splitmix64(seed + 1000003ULL * static_cast<std::uint64_t>(e) +
                             7919ULL * static_cast<std::uint64_t>(y));
      const TimeSeries block = generate(spec);
      const std::int64_t base = year_start_epoch(year);
      for (std::size_t i = 0; i < block.values.size(); ++i) {
        const double price =
            crisis ? block.values[i] : block.values[i] + 10000.0;
        char line[64];
        const int len = std::snprintf(
            line, sizeof line, "%s,%lld,%.17g\n", entity,
            static_cast<long long>(base + static_cast<std::int64_t>(i) * 4500),
            price);
        out.write(line, len);
      }
    }
  }
  return csv;
}

int run_regime_pipeline(const fs::path& input, const fs::path& output_dir,
                        unsigned threads, std::string& diagnostics) {
  RunConfig config;
  config.input_path = input.string();
  config.output_dir = output_dir.string();
  config.threads = threads;
  std::ostringstream err;
  const int status = run_analyze(config, err);
  diagnostics = err.str();
  return status;
}

// Leaf-label sets of every internal node of a serialized dendrogram.
std::set<std::string> collect_branches(
    const nlohmann::json& node, std::vector<std::set<std::string>>& branches) {
  if (node.contains("label"))
    return {node.at("label").get<std::string>()};
  std::set<std::string> members =
      collect_branches(node.at("left"), branches);
  const std::set<std::string> right =
      collect_branches(node.at("right"), branches);
  members.insert(right.begin(), right.end());
  branches.push_back(members);
  return members;
}

bool crisis_branch_recovered(const fs::path& dendrogram_json) {
  std::ifstream in(dendrogram_json);
  if (!in.good()) return false;
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) return false;
  std::vector<std::set<std::string>> branches;
  collect_branches(doc, branches);
  std::set<std::string> crisis;
  for (const int year : kCrisisYears) crisis.insert(std::to_string(year));
  return std::find(branches.begin(), branches.end(), crisis) != branches.end();
}

// 9. The pipeline must isolate the three designated regime years in their
// own dendrogram branch in at least 9 of 10 seeded repetitions.
Outcome check_regime_recovery() {
  int recovered = 0;
  std::string failures;
  for (std::uint64_t rep = 1; rep <= 10; ++rep) {
    const fs::path dir = fresh_dir(strf("recovery_%llu",
                                        static_cast<unsigned long long>(rep)));
    const fs::path input = write_regime_fixture(dir, 9000 + rep);
    std::string diagnostics;
    const int status = run_regime_pipeline(input, dir / "out", 1, diagnostics);
    const bool ok =
        status == 0 && crisis_branch_recovered(dir / "out" / "dendrogram.json");
    if (ok)
      ++recovered;
    else
      failures += strf(" rep %llu (exit %d)",
                       static_cast<unsigned long long>(rep), status);
    fs::remove_all(dir);
  }
  if (recovered < 9)
    return {false, strf("%d/10 repetitions isolated the regime years;%s",
                        recovered, failures.c_str())};
  return {true, strf("%d/10 repetitions isolated {2001, 2002, 2009}",
                     recovered)};
}

// 10. Runtime: the fast natural-graph construction must finish a 5000-point
// window in under 50 ms (median of 5), and one full 35-entity, 15-year
// pipeline run must finish in under 60 s.
Outcome check_performance() {
  std::vector<double> build_seconds;
  std::size_t edge_guard = 0;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::additive_walk;
    spec.length = 5000;
    spec.seed = 9100 + trial;
    const TimeSeries window = generate(spec);
    const auto start = std::chrono::steady_clock::now();
    const auto graph = vg_build(window.values, VgAlgorithm::divide_and_conquer);
    build_seconds.push_back(seconds_since(start));
    edge_guard += graph.edge_count();
  }
  std::sort(build_seconds.begin(), build_seconds.end());
  const double median_ms = build_seconds[2] * 1e3;
  if (median_ms >= 50.0 || edge_guard == 0)
    return {false, strf("median build %.2f ms (budget 50 ms)", median_ms)};

  const fs::path dir = fresh_dir("performance");
  const fs::path input = write_regime_fixture(dir, 9001);
  std::string diagnostics;
  const auto start = std::chrono::steady_clock::now();
  const int status = run_regime_pipeline(input, dir / "out", 0, diagnostics);
  const double pipeline_seconds = seconds_since(start);
  fs::remove_all(dir);
  if (status != 0) return {false, strf("pipeline exited %d", status)};
  if (pipeline_seconds >= 60.0)
    return {false, strf("pipeline took %.1f s (budget 60 s)",
                        pipeline_seconds)};
  return {true, strf("median build %.2f ms, pipeline %.1f s", median_ms,
                     pipeline_seconds)};
}

std::map<std::string, std::string> read_artifacts(const fs::path& dir) {
  std::map<std::string, std::string> artifacts;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    artifacts[entry.path().filename().string()] = buffer.str();
  }
  return artifacts;
}

std::string first_difference(const std::map<std::string, std::string>& a,
                             const std::map<std::string, std::string>& b) {
  for (const auto& [name, content] : a) {
    const auto other = b.find(name);
    if (other == b.end()) return name + " missing";
    if (other->second != content) return name + " differs";
  }
  for (const auto& [name, content] : b)
    if (a.find(name) == a.end()) return name + " extra";
  return "";
}

// 11. The same input must yield byte-identical artifacts across repeated
// runs and across thread counts 1 and 8.
Outcome check_determinism() {
  const fs::path dir = fresh_dir("determinism");
  const fs::path input = write_regime_fixture(dir, 9001);
  std::map<std::string, std::string> outputs[3];
  const unsigned thread_counts[3] = {1, 1, 8};
  for (int run = 0; run < 3; ++run) {
    const fs::path out = dir / strf("out_%d", run);
    std::string diagnostics;
    const int status =
        run_regime_pipeline(input, out, thread_counts[run], diagnostics);
    if (status != 0) {
      fs::remove_all(dir);
      return {false, strf("run %d exited %d", run, status)};
    }
    outputs[run] = read_artifacts(out);
  }
  fs::remove_all(dir);
  const std::string rerun_diff = first_difference(outputs[0], outputs[1]);
  if (!rerun_diff.empty())
    return {false, "rerun differs: " + rerun_diff};
  const std::string thread_diff = first_difference(outputs[0], outputs[2]);
  if (!thread_diff.empty())
    return {false, "thread counts 1 vs 8 differ: " + thread_diff};
  return {true, strf("%zu artifacts identical across 3 runs",
                     outputs[0].size())};
}

struct Criterion {
  int number;
  const char* description;
  Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "fast and naive graph constructions agree on a mixed corpus",
     check_construction_equivalence},
    {2, "horizontal graph is a subgraph of the natural graph",
     check_subgraph_law},
    {3, "graphs invariant under affine and monotone value maps",
     check_invariance},
    {4, "in-degree law equals the out-degree law of the reversed window",
     check_reversal_identity},
    {5, "divergence hand values and support-violation handling",
     check_divergence_values},
    {6, "walk irreversibility shrinks with size; multiplicative clears p95",
     check_null_separation},
    {7, "fractional-noise degree tail matches the 3-2H exponent",
     check_tail_exponent},
    {8, "analytics match the independent statistics oracle",
     check_analytics},
    {9, "pipeline dendrogram isolates the designated regime years",
     check_regime_recovery},
    {10, "graph build and full pipeline meet the runtime budgets",
     check_performance},
    {11, "pipeline artifacts byte-identical across reruns and threads",
     check_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int number = std::atoi(argv[i]);
    if (number < 1 || number > 11) {
      std::fprintf(stderr, "usage: %s [criterion 1..11]...\n", argv[0]);
      return 2;
    }
    selected.push_back(number);
  }

  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.number) ==
            selected.end())
      continue;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, strf("unexpected exception: %s", e.what())};
    }
    std::printf("[%s] criterion %d: %s%s%s\n", outcome.pass ? "PASS" : "FAIL",
                criterion.number, criterion.description,
                outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  return failures;
}
