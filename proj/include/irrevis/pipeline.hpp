#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "irrevis/analytics.hpp"
#include "irrevis/irreversibility.hpp"
#include "irrevis/nullmodels.hpp"

namespace irrevis {

/// Full analysis run: ingestion, per-entity window and annual profiles,
/// ranked report, PCA projection of the years x entities matrix and a
/// complete-linkage dendrogram of years.
struct RunConfig {
  std::string input_path;
  std::string output_dir;
  GraphKind graph = GraphKind::vg;
  DivergenceKind divergence = DivergenceKind::kld;
  BiasRule bias = BiasRule::one_over_n;
  std::size_t window = 5000;         ///< points per window
  std::size_t pca_components = 2;
  bool standardize = false;
  unsigned threads = 0;              ///< 0 = hardware concurrency
  std::size_t plot_stride = 1000;    ///< keep every k-th point of plot data
};

struct SimulateConfig {
  GeneratorSpec spec;
  std::string entity = "sim";
  std::int64_t start_epoch = 946684800;  ///< 2000-01-01T00:00:00Z
  std::int64_t step_seconds = 86400;
  double price_scale = 1.0;  ///< price = exp(scale * x) for additive kinds
  std::string output_path;
};

struct BaselineRunConfig {
  GeneratorSpec model;
  std::size_t n = 5000;
  std::size_t trials = 100;
  GraphKind graph = GraphKind::vg;
  DivergenceKind divergence = DivergenceKind::kld;
  BiasRule bias = BiasRule::one_over_n;
  std::string output_path;
};

struct GraphExportConfig {
  std::string input_path;
  std::string entity;          ///< empty = first entity in the file
  std::size_t window = 0;      ///< 0 = whole series as one window
  std::size_t window_index = 0;
  GraphKind graph = GraphKind::vg;
  std::string output_path;
};

/// Exit codes shared by all runners: 0 success, 1 I/O or validation
/// failure (diagnostic on `err`), 2 structurally valid but empty input.
int run_analyze(const RunConfig& config, std::ostream& err);

/// Writes a synthetic series in the ingestion CSV format. Multiplicative
/// walks are written as-is; other kinds are exponentiated into prices.
int run_simulate(const SimulateConfig& config, std::ostream& err);

/// Computes and writes a null-model irreversibility baseline as JSON.
int run_baseline(const BaselineRunConfig& config, std::ostream& err);

/// Writes the visibility graph of one window of one entity as an edge-list
/// CSV.
int run_graph_export(const GraphExportConfig& config, std::ostream& err);

}  // namespace irrevis
