#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace irrevis {

/// Graph family: natural visibility (vg) keeps the line-of-sight criterion
/// over value/time coordinates; horizontal visibility (hvg) only compares
/// heights.
enum class GraphKind { vg, hvg };

enum class VgAlgorithm { naive, divide_and_conquer };
enum class HvgAlgorithm { naive, stack };

/// Directed visibility graph of a window. Nodes are window indices; every
/// edge points forward in time (source < target). Per-node adjacency is
/// sorted ascending, so the edge list has a canonical order.
struct DirectedVisibilityGraph {
  GraphKind kind = GraphKind::vg;
  std::size_t node_count = 0;
  std::vector<std::vector<std::uint32_t>> out_neighbors;

  std::size_t edge_count() const noexcept {
    std::size_t total = 0;
    for (const auto& adjacency : out_neighbors) total += adjacency.size();
    return total;
  }
};

/// In/out degree of every node of a directed graph.
struct DegreeSequences {
  std::vector<std::uint32_t> in;
  std::vector<std::uint32_t> out;
};

/// Empirical probability distribution over the observed degrees.
/// `support` is strictly ascending and parallel to `mass`; masses are
/// positive and sum to one.
struct DegreeDistribution {
  std::vector<std::uint32_t> support;
  std::vector<double> mass;
};

/// Natural visibility graph: nodes i < j are linked when every intermediate
/// sample lies strictly below the chord from (i, x[i]) to (j, x[j]).
/// Adjacent samples are always linked. Requires length >= 2 (size_error).
///
/// Both algorithms produce the identical edge set; divide_and_conquer is the
/// fast default (recursion on the window maximum, ties broken towards the
/// smallest index).
DirectedVisibilityGraph vg_build(
    std::span<const double> window,
    VgAlgorithm algorithm = VgAlgorithm::divide_and_conquer);

/// Horizontal visibility graph: nodes i < j are linked when every
/// intermediate sample is strictly below min(x[i], x[j]). Always a subgraph
/// of the natural visibility graph of the same window. Requires length >= 2
/// (size_error). `stack` is the linear-time default.
DirectedVisibilityGraph hvg_build(std::span<const double> window,
                                  HvgAlgorithm algorithm = HvgAlgorithm::stack);

DegreeSequences degree_sequences(const DirectedVisibilityGraph& graph);

/// Histogram of a degree sequence normalized to total mass one.
/// Requires a non-empty sequence (size_error).
DegreeDistribution degree_distribution(std::span<const std::uint32_t> degrees);

/// Undirected degrees (in + out) per node.
std::vector<std::uint32_t> total_degrees(const DirectedVisibilityGraph& graph);

/// Writes the edge list as CSV with header `source,target`, ordered by
/// source then target.
void write_edge_list(std::ostream& out, const DirectedVisibilityGraph& graph);

}  // namespace irrevis
