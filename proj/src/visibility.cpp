#include "irrevis/visibility.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <utility>

#include "irrevis/errors.hpp"

namespace irrevis {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_window(std::span<const double> window) {
  if (window.size() < 2)
    throw size_error("visibility graph requires at least 2 samples");
}

DirectedVisibilityGraph make_graph(GraphKind kind, std::size_t n) {
  DirectedVisibilityGraph graph;
  graph.kind = kind;
  graph.node_count = n;
  graph.out_neighbors.resize(n);
  return graph;
}

// One forward sweep per anchor. A sample j is visible from i exactly when
// the chord slope (x[j]-x[i])/(j-i) exceeds the running maximum over the
// intermediates, so each anchor costs one pass.
void vg_naive_impl(std::span<const double> x, DirectedVisibilityGraph& graph) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double max_slope = kNegInf;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double slope = (x[j] - x[i]) / static_cast<double>(j - i);
      if (slope > max_slope) {
        graph.out_neighbors[i].push_back(static_cast<std::uint32_t>(j));
        max_slope = slope;
      }
    }
  }
}

// Divide and conquer on the window maximum. No pair of samples on opposite
// sides of a maximal sample can see each other (the chord passes at or below
// the maximum at that index), so after linking the pivot to both sides the
// two halves are independent subproblems.
void vg_divide_impl(std::span<const double> x, DirectedVisibilityGraph& graph) {
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  pending.emplace_back(0, x.size() - 1);
  while (!pending.empty()) {
    const auto [lo, hi] = pending.back();
    pending.pop_back();
    if (hi <= lo) continue;

    std::size_t k = lo;
    for (std::size_t i = lo + 1; i <= hi; ++i)
      if (x[i] > x[k]) k = i;  // ties keep the smallest index

    double max_slope = kNegInf;
    for (std::size_t j = k + 1; j <= hi; ++j) {
      const double slope = (x[j] - x[k]) / static_cast<double>(j - k);
      if (slope > max_slope) {
        graph.out_neighbors[k].push_back(static_cast<std::uint32_t>(j));
        max_slope = slope;
      }
    }
    max_slope = kNegInf;
    for (std::size_t i = k; i-- > lo;) {
      const double slope = (x[i] - x[k]) / static_cast<double>(k - i);
      if (slope > max_slope) {
        graph.out_neighbors[i].push_back(static_cast<std::uint32_t>(k));
        max_slope = slope;
      }
    }

    if (k > lo) pending.emplace_back(lo, k - 1);
    if (k < hi) pending.emplace_back(k + 1, hi);
  }
  for (auto& adjacency : graph.out_neighbors)
    std::sort(adjacency.begin(), adjacency.end());
}

void hvg_naive_impl(std::span<const double> x, DirectedVisibilityGraph& graph) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double max_between = kNegInf;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (max_between < std::min(x[i], x[j]))
        graph.out_neighbors[i].push_back(static_cast<std::uint32_t>(j));
      max_between = std::max(max_between, x[j]);
      if (max_between >= x[i]) break;  // everything beyond j is blocked
    }
  }
}

// Monotonic stack, one push/pop per sample. The stack holds indices with
// strictly decreasing heights: a new sample links every popped smaller
// sample plus the first remaining one; an equal-height top is popped after
// linking because the new sample occludes it from everything later.
void hvg_stack_impl(std::span<const double> x, DirectedVisibilityGraph& graph) {
  std::vector<std::uint32_t> stack;
  stack.reserve(x.size());
  for (std::uint32_t t = 0; t < x.size(); ++t) {
    while (!stack.empty() && x[stack.back()] < x[t]) {
      graph.out_neighbors[stack.back()].push_back(t);
      stack.pop_back();
    }
    if (!stack.empty()) {
      graph.out_neighbors[stack.back()].push_back(t);
      if (x[stack.back()] == x[t]) stack.pop_back();
    }
    stack.push_back(t);
  }
}

}  // namespace

DirectedVisibilityGraph vg_build(std::span<const double> window,
                                 VgAlgorithm algorithm) {
  check_window(window);
  DirectedVisibilityGraph graph = make_graph(GraphKind::vg, window.size());
  if (algorithm == VgAlgorithm::naive)
    vg_naive_impl(window, graph);
  else
    vg_divide_impl(window, graph);
  return graph;
}

DirectedVisibilityGraph hvg_build(std::span<const double> window,
                                  HvgAlgorithm algorithm) {
  check_window(window);
  DirectedVisibilityGraph graph = make_graph(GraphKind::hvg, window.size());
  if (algorithm == HvgAlgorithm::naive)
    hvg_naive_impl(window, graph);
  else
    hvg_stack_impl(window, graph);
  return graph;
}

DegreeSequences degree_sequences(const DirectedVisibilityGraph& graph) {
  DegreeSequences degrees;
  degrees.in.assign(graph.node_count, 0);
  degrees.out.assign(graph.node_count, 0);
  for (std::size_t i = 0; i < graph.node_count; ++i) {
    degrees.out[i] = static_cast<std::uint32_t>(graph.out_neighbors[i].size());
    for (const std::uint32_t j : graph.out_neighbors[i]) ++degrees.in[j];
  }
  return degrees;
}

DegreeDistribution degree_distribution(
    std::span<const std::uint32_t> degrees) {
  if (degrees.empty())
    throw size_error("degree distribution of an empty sequence");
  std::vector<std::uint32_t> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());

  DegreeDistribution distribution;
  const double total = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    distribution.support.push_back(sorted[i]);
    distribution.mass.push_back(static_cast<double>(j - i) / total);
    i = j;
  }
  return distribution;
}

std::vector<std::uint32_t> total_degrees(const DirectedVisibilityGraph& graph) {
  const DegreeSequences degrees = degree_sequences(graph);
  std::vector<std::uint32_t> total(graph.node_count);
  for (std::size_t i = 0; i < graph.node_count; ++i)
    total[i] = degrees.in[i] + degrees.out[i];
  return total;
}

void write_edge_list(std::ostream& out, const DirectedVisibilityGraph& graph) {
  out << "source,target\n";
  for (std::size_t i = 0; i < graph.node_count; ++i)
    for (const std::uint32_t j : graph.out_neighbors[i])
      out << i << ',' << j << '\n';
}

}  // namespace irrevis
