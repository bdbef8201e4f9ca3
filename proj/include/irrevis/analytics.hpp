#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "irrevis/irreversibility.hpp"

namespace irrevis {

/// Per-entity summary row of an analysis run.
struct CompanyReport {
  std::string entity_id;
  double score = 0.0;          ///< mean annual irreversibility
  double irr_variance = 0.0;   ///< population variance of annual values
  double avg_volatility = 0.0; ///< mean of annual volatilities
  std::size_t rank = 0;        ///< 1 = most irreversible
};

/// Dense years x entities matrix of annual irreversibility. Every cell must
/// be present; rows (years) and columns (entity ids) are ascending.
struct FeatureMatrix {
  std::vector<int> years;
  std::vector<std::string> entities;
  Eigen::MatrixXd values;  ///< years.size() rows, entities.size() columns
};

struct PcaResult {
  Eigen::MatrixXd components;   ///< columns = component directions (c x m)
  Eigen::MatrixXd projections;  ///< rows = projected observations (r x m)
  std::vector<double> explained_variance_ratio;  ///< length m
};

/// One agglomeration step: clusters `a` and `b` (node ids) merge at
/// `height`. Leaf i is labels[i]; merge i creates node L+i. Within a merge,
/// `a` carries the lexicographically smaller member label.
struct Merge {
  std::size_t a = 0;
  std::size_t b = 0;
  double height = 0.0;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;  ///< heights non-decreasing

  /// Leaf indices under a node id, ascending.
  std::vector<std::size_t> members(std::size_t node) const;
};

/// Mean of the profile values (insufficient_data_error when empty).
double score(const IrreversibilityProfile& profile);

/// Population variance <I^2> - <I>^2 of the profile values; requires at
/// least 2 values (insufficient_data_error).
double irr_variance(const IrreversibilityProfile& profile);

/// Sorts by score descending, entity id ascending on ties, and assigns
/// ranks 1..N.
std::vector<CompanyReport> rank_entities(std::vector<CompanyReport> reports);

/// Squared Pearson correlation. Requires equal lengths of at least 3
/// (size_error) and nonzero variance on both sides (degenerate_error).
double pearson_r2(std::span<const double> x, std::span<const double> y);

/// Assembles the dense years x entities matrix from per-entity annual
/// profiles restricted to `years`. A missing (year, entity) cell raises
/// insufficient_data_error.
FeatureMatrix build_feature_matrix(
    const std::map<std::string, IrreversibilityProfile>& annual_profiles,
    const std::vector<int>& years);

/// Principal component analysis of the rows via singular value
/// decomposition of the column-centered matrix (covariance PCA; with
/// `standardize`, columns are scaled to unit sample variance first).
/// Components are sign-fixed so each one's largest-magnitude coordinate is
/// positive. Requires 1 <= m <= min(rows - 1, cols) (dimension_error) and a
/// non-constant matrix (degenerate_error).
PcaResult pca(const FeatureMatrix& features, std::size_t m,
              bool standardize = false);

/// Euclidean distance between every pair of rows; exactly symmetric with a
/// zero diagonal.
Eigen::MatrixXd distance_matrix(const FeatureMatrix& features);

/// Complete-linkage agglomerative clustering of a distance matrix.
/// Tied merge candidates resolve to the pair whose (lexicographically
/// smallest member label, then partner label) is smallest, which makes the
/// merge list deterministic. The matrix must be square, symmetric and
/// nonnegative with a zero diagonal (dimension_error / domain_error).
Dendrogram cluster_complete(const Eigen::MatrixXd& distances,
                            const std::vector<std::string>& labels);

/// {labels, projections, explained_variance_ratio} as JSON.
std::string pca_to_json(const PcaResult& result,
                        const std::vector<int>& years);

/// Nested {left, right, height} JSON with {label} leaves.
std::string dendrogram_to_json(const Dendrogram& dendrogram);

/// Newick serialization; branch lengths are parent height minus child
/// height, leaves sit at height zero.
std::string dendrogram_to_newick(const Dendrogram& dendrogram);

/// `entity,score,irr_variance,avg_volatility,rank` CSV, ordered by rank.
void write_report_csv(std::ostream& out,
                      const std::vector<CompanyReport>& reports);

}  // namespace irrevis
