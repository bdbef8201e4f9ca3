// irrevis -- time-series irreversibility via directed visibility graphs.
//
// Subcommands: analyze (full pipeline over a price CSV), simulate (write a
// synthetic series), baseline (null-model irreversibility quantiles),
// graph-export (edge list of one window's visibility graph).

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "irrevis/pipeline.hpp"

namespace {

using irrevis::BiasRule;
using irrevis::DivergenceKind;
using irrevis::GeneratorKind;
using irrevis::GraphKind;

const std::map<std::string, GraphKind> kGraphNames{
    {"vg", GraphKind::vg}, {"hvg", GraphKind::hvg}};
const std::map<std::string, DivergenceKind> kDivergenceNames{
    {"kld", DivergenceKind::kld}, {"l1", DivergenceKind::l1}};
const std::map<std::string, BiasRule> kBiasNames{
    {"one-over-n", BiasRule::one_over_n}, {"none", BiasRule::none}};
const std::map<std::string, GeneratorKind> kKindNames{
    {"noise", GeneratorKind::white_noise},
    {"walk", GeneratorKind::additive_walk},
    {"gbm", GeneratorKind::multiplicative_walk},
    {"fbm", GeneratorKind::fbm}};

// IRREVIS_THREADS overrides any --threads value.
void apply_thread_env(unsigned& threads) {
  const char* env = std::getenv("IRREVIS_THREADS");
  if (!env) return;
  unsigned parsed = 0;
  const std::string text(env);
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), parsed);
  if (ec == std::errc{} && ptr == text.data() + text.size() && parsed > 0)
    threads = parsed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "irrevis: quantify time irreversibility of series via directed "
      "visibility graphs"};
  app.require_subcommand(1);

  irrevis::RunConfig analyze;
  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "run the full irreversibility pipeline");
  cmd_analyze->add_option("--input", analyze.input_path, "price CSV to read")
      ->required();
  cmd_analyze
      ->add_option("--output-dir", analyze.output_dir,
                   "directory for the result artifacts")
      ->required();
  cmd_analyze
      ->add_option("--graph", analyze.graph, "graph family (vg or hvg)")
      ->transform(CLI::CheckedTransformer(kGraphNames));
  cmd_analyze
      ->add_option("--divergence", analyze.divergence,
                   "divergence between degree distributions (kld or l1)")
      ->transform(CLI::CheckedTransformer(kDivergenceNames));
  cmd_analyze
      ->add_option("--bias", analyze.bias,
                   "finite-size correction (one-over-n or none)")
      ->transform(CLI::CheckedTransformer(kBiasNames));
  cmd_analyze->add_option("--n", analyze.window, "window size in points");
  cmd_analyze->add_option("--pca-components", analyze.pca_components,
                          "projection dimensions");
  cmd_analyze->add_flag("--standardize", analyze.standardize,
                        "scale matrix columns to unit variance before PCA");
  cmd_analyze->add_option("--threads", analyze.threads,
                          "worker threads (0 = hardware)");
  cmd_analyze->add_option("--plot-stride", analyze.plot_stride,
                          "keep every k-th point of plot data");

  irrevis::SimulateConfig simulate;
  std::string simulate_kind = "walk";
  CLI::App* cmd_simulate =
      app.add_subcommand("simulate", "write a synthetic price series");
  cmd_simulate
      ->add_option("--kind", simulate_kind,
                   "noise, walk, gbm or fbm")
      ->check(CLI::IsMember({"noise", "walk", "gbm", "fbm"}));
  cmd_simulate->add_option("--length", simulate.spec.length, "sample count")
      ->required();
  cmd_simulate->add_option("--mu", simulate.spec.mu, "per-step drift");
  cmd_simulate->add_option("--sigma", simulate.spec.sigma,
                           "per-step volatility (gbm)");
  cmd_simulate->add_option("--hurst", simulate.spec.hurst,
                           "Hurst exponent (fbm)");
  cmd_simulate->add_option("--seed", simulate.spec.seed, "RNG seed");
  cmd_simulate->add_option("--entity", simulate.entity, "entity id to write");
  cmd_simulate->add_option("--start-epoch", simulate.start_epoch,
                           "first timestamp (epoch seconds)");
  cmd_simulate->add_option("--step-seconds", simulate.step_seconds,
                           "timestamp increment");
  cmd_simulate->add_option("--price-scale", simulate.price_scale,
                           "scale inside exp() for additive kinds");
  cmd_simulate->add_option("--output", simulate.output_path, "CSV to write")
      ->required();

  irrevis::BaselineRunConfig baseline;
  std::string baseline_kind = "walk";
  CLI::App* cmd_baseline = app.add_subcommand(
      "baseline", "null-model irreversibility quantiles as JSON");
  cmd_baseline
      ->add_option("--kind", baseline_kind, "noise, walk, gbm or fbm")
      ->check(CLI::IsMember({"noise", "walk", "gbm", "fbm"}));
  cmd_baseline->add_option("--n", baseline.n, "window size in points");
  cmd_baseline->add_option("--trials", baseline.trials,
                           "independent trials (>= 30)");
  cmd_baseline->add_option("--seed", baseline.model.seed, "base RNG seed");
  cmd_baseline->add_option("--mu", baseline.model.mu, "per-step drift");
  cmd_baseline->add_option("--sigma", baseline.model.sigma,
                           "per-step volatility (gbm)");
  cmd_baseline->add_option("--hurst", baseline.model.hurst,
                           "Hurst exponent (fbm)");
  cmd_baseline
      ->add_option("--graph", baseline.graph, "graph family (vg or hvg)")
      ->transform(CLI::CheckedTransformer(kGraphNames));
  cmd_baseline
      ->add_option("--divergence", baseline.divergence, "kld or l1")
      ->transform(CLI::CheckedTransformer(kDivergenceNames));
  cmd_baseline
      ->add_option("--bias", baseline.bias, "one-over-n or none")
      ->transform(CLI::CheckedTransformer(kBiasNames));
  cmd_baseline->add_option("--output", baseline.output_path, "JSON to write")
      ->required();

  irrevis::GraphExportConfig graph_export;
  CLI::App* cmd_export = app.add_subcommand(
      "graph-export", "edge list of one window's visibility graph");
  cmd_export->add_option("--input", graph_export.input_path, "price CSV")
      ->required();
  cmd_export->add_option("--entity", graph_export.entity,
                         "entity id (default: first in the file)");
  cmd_export->add_option("--n", graph_export.window,
                         "window size (0 = whole series)");
  cmd_export->add_option("--window-index", graph_export.window_index,
                         "which window to export");
  cmd_export
      ->add_option("--graph", graph_export.graph, "graph family (vg or hvg)")
      ->transform(CLI::CheckedTransformer(kGraphNames));
  cmd_export->add_option("--output", graph_export.output_path, "CSV to write")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (cmd_analyze->parsed()) {
    apply_thread_env(analyze.threads);
    return irrevis::run_analyze(analyze, std::cerr);
  }
  if (cmd_simulate->parsed()) {
    simulate.spec.kind = kKindNames.at(simulate_kind);
    return irrevis::run_simulate(simulate, std::cerr);
  }
  if (cmd_baseline->parsed()) {
    baseline.model.kind = kKindNames.at(baseline_kind);
    return irrevis::run_baseline(baseline, std::cerr);
  }
  if (cmd_export->parsed()) {
    return irrevis::run_graph_export(graph_export, std::cerr);
  }
  return 1;
}
