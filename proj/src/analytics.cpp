#include "irrevis/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "irrevis/errors.hpp"

namespace irrevis {

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void check_distance_matrix(const Eigen::MatrixXd& distances,
                           std::size_t labels) {
  if (distances.rows() != distances.cols())
    throw dimension_error("distance matrix must be square");
  if (static_cast<std::size_t>(distances.rows()) != labels)
    throw dimension_error("label count must match the distance matrix");
  for (Eigen::Index i = 0; i < distances.rows(); ++i) {
    if (distances(i, i) != 0.0)
      throw domain_error("distance matrix needs a zero diagonal");
    for (Eigen::Index j = 0; j < distances.cols(); ++j) {
      const double d = distances(i, j);
      if (!(d >= 0.0) || !std::isfinite(d))
        throw domain_error("distances must be finite and nonnegative");
      if (d != distances(j, i))
        throw domain_error("distance matrix must be symmetric");
    }
  }
}

bool newick_needs_quotes(const std::string& label) {
  return label.find_first_of(" (),:;'[]") != std::string::npos;
}

std::string newick_label(const std::string& label) {
  if (!newick_needs_quotes(label)) return label;
  std::string quoted = "'";
  for (const char c : label) {
    if (c == '\'') quoted += "''";
    else quoted.push_back(c);
  }
  quoted += "'";
  return quoted;
}

}  // namespace

std::vector<std::size_t> Dendrogram::members(std::size_t node) const {
  const std::size_t leaf_count = leaves.size();
  if (node < leaf_count) return {node};
  const Merge& merge = merges.at(node - leaf_count);
  std::vector<std::size_t> all = members(merge.a);
  const std::vector<std::size_t> right = members(merge.b);
  all.insert(all.end(), right.begin(), right.end());
  std::sort(all.begin(), all.end());
  return all;
}

double score(const IrreversibilityProfile& profile) {
  if (profile.values.empty())
    throw insufficient_data_error("score of an empty profile");
  double total = 0.0;
  for (const double value : profile.values) total += value;
  return total / static_cast<double>(profile.values.size());
}

double irr_variance(const IrreversibilityProfile& profile) {
  if (profile.values.size() < 2)
    throw insufficient_data_error("variance needs at least 2 values");
  const double mean = score(profile);
  double sum_sq = 0.0;
  for (const double value : profile.values)
    sum_sq += (value - mean) * (value - mean);
  return sum_sq / static_cast<double>(profile.values.size());
}

std::vector<CompanyReport> rank_entities(std::vector<CompanyReport> reports) {
  std::sort(reports.begin(), reports.end(),
            [](const CompanyReport& a, const CompanyReport& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.entity_id < b.entity_id;
            });
  for (std::size_t i = 0; i < reports.size(); ++i) reports[i].rank = i + 1;
  return reports;
}

double pearson_r2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw size_error("correlation needs equal lengths");
  if (x.size() < 3) throw size_error("correlation needs at least 3 points");
  const double n = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw degenerate_error("correlation of a zero-variance sequence");
  return (sxy * sxy) / (sxx * syy);
}

FeatureMatrix build_feature_matrix(
    const std::map<std::string, IrreversibilityProfile>& annual_profiles,
    const std::vector<int>& years) {
  FeatureMatrix features;
  features.years = years;
  for (const auto& [entity, profile] : annual_profiles)
    features.entities.push_back(entity);
  features.values.resize(static_cast<Eigen::Index>(years.size()),
                         static_cast<Eigen::Index>(features.entities.size()));

  Eigen::Index column = 0;
  for (const auto& [entity, profile] : annual_profiles) {
    for (std::size_t r = 0; r < years.size(); ++r) {
      const auto it = std::find(profile.keys.begin(), profile.keys.end(),
                                static_cast<std::int64_t>(years[r]));
      if (it == profile.keys.end())
        throw insufficient_data_error("entity '" + entity +
                                      "' has no value for year " +
                                      std::to_string(years[r]));
      const auto index =
          static_cast<std::size_t>(it - profile.keys.begin());
      features.values(static_cast<Eigen::Index>(r), column) =
          profile.values[index];
    }
    ++column;
  }
  return features;
}

PcaResult pca(const FeatureMatrix& features, std::size_t m, bool standardize) {
  const Eigen::Index rows = features.values.rows();
  const Eigen::Index cols = features.values.cols();
  if (rows < 2 || cols < 1)
    throw dimension_error("PCA needs at least 2 rows and 1 column");
  const std::size_t max_components =
      std::min(static_cast<std::size_t>(rows - 1),
               static_cast<std::size_t>(cols));
  if (m < 1 || m > max_components)
    throw dimension_error("component count out of range");

  Eigen::MatrixXd centered = features.values;
  const Eigen::RowVectorXd means = centered.colwise().mean();
  centered.rowwise() -= means;
  if (standardize) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double sd = std::sqrt(centered.col(j).squaredNorm() /
                                  static_cast<double>(rows - 1));
      if (sd > 0.0) centered.col(j) /= sd;
    }
  }

  const double scale =
      std::max(features.values.cwiseAbs().maxCoeff(), 1.0);
  if (centered.cwiseAbs().maxCoeff() <= 1e-12 * scale)
    throw degenerate_error("constant matrix has no principal components");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd singular = svd.singularValues();
  const double total_variance = singular.squaredNorm();

  PcaResult result;
  result.components = svd.matrixV().leftCols(static_cast<Eigen::Index>(m));
  // Deterministic orientation: the largest-magnitude coordinate of each
  // component points up.
  for (Eigen::Index j = 0; j < result.components.cols(); ++j) {
    Eigen::Index pivot = 0;
    result.components.col(j).cwiseAbs().maxCoeff(&pivot);
    if (result.components(pivot, j) < 0.0) result.components.col(j) *= -1.0;
  }
  result.projections = centered * result.components;
  for (std::size_t i = 0; i < m; ++i) {
    const double value = singular(static_cast<Eigen::Index>(i));
    result.explained_variance_ratio.push_back(value * value / total_variance);
  }
  return result;
}

Eigen::MatrixXd distance_matrix(const FeatureMatrix& features) {
  const Eigen::Index rows = features.values.rows();
  Eigen::MatrixXd distances = Eigen::MatrixXd::Zero(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = i + 1; j < rows; ++j) {
      const double d =
          (features.values.row(i) - features.values.row(j)).norm();
      distances(i, j) = d;
      distances(j, i) = d;
    }
  }
  return distances;
}

Dendrogram cluster_complete(const Eigen::MatrixXd& distances,
                            const std::vector<std::string>& labels) {
  check_distance_matrix(distances, labels.size());
  const std::size_t n = labels.size();
  if (n == 0) throw dimension_error("clustering needs at least one point");

  Dendrogram dendrogram;
  dendrogram.leaves = labels;
  if (n == 1) return dendrogram;

  struct Cluster {
    std::size_t id;
    std::string key;  // lexicographically smallest member label
  };
  std::vector<Cluster> active;
  active.reserve(n);
  for (std::size_t i = 0; i < n; ++i) active.push_back({i, labels[i]});

  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dist[i][j] = distances(static_cast<Eigen::Index>(i),
                             static_cast<Eigen::Index>(j));

  std::size_t next_id = n;
  while (active.size() > 1) {
    // Closest pair; ties resolve to the smallest (key, key) pair so the
    // merge order is independent of the input permutation.
    std::size_t best_p = 0, best_q = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < active.size(); ++p) {
      for (std::size_t q = p + 1; q < active.size(); ++q) {
        const double d = dist[p][q];
        const auto& lo_key = std::min(active[p].key, active[q].key);
        const auto& hi_key = std::max(active[p].key, active[q].key);
        const auto& best_lo = std::min(active[best_p].key, active[best_q].key);
        const auto& best_hi = std::max(active[best_p].key, active[best_q].key);
        if (d < best ||
            (d == best && std::pair(lo_key, hi_key) <
                              std::pair(best_lo, best_hi))) {
          best = d;
          best_p = p;
          best_q = q;
        }
      }
    }

    const Cluster& cp = active[best_p];
    const Cluster& cq = active[best_q];
    const bool p_first = cp.key <= cq.key;
    dendrogram.merges.push_back(Merge{p_first ? cp.id : cq.id,
                                      p_first ? cq.id : cp.id, best});

    // Complete linkage: distance to the union is the farther of the two.
    std::vector<double> merged_row(active.size());
    for (std::size_t r = 0; r < active.size(); ++r)
      merged_row[r] = std::max(dist[best_p][r], dist[best_q][r]);

    Cluster merged{next_id++, std::min(cp.key, cq.key)};
    std::vector<Cluster> next_active;
    std::vector<std::vector<double>> next_dist;
    for (std::size_t p = 0; p < active.size(); ++p) {
      if (p == best_p || p == best_q) continue;
      next_active.push_back(active[p]);
    }
    next_active.push_back(merged);
    const std::size_t size = next_active.size();
    next_dist.assign(size, std::vector<double>(size, 0.0));
    std::vector<std::size_t> old_index;
    for (std::size_t p = 0; p < active.size(); ++p)
      if (p != best_p && p != best_q) old_index.push_back(p);
    for (std::size_t a = 0; a < old_index.size(); ++a) {
      for (std::size_t b = 0; b < old_index.size(); ++b)
        next_dist[a][b] = dist[old_index[a]][old_index[b]];
      next_dist[a][size - 1] = merged_row[old_index[a]];
      next_dist[size - 1][a] = merged_row[old_index[a]];
    }
    active = std::move(next_active);
    dist = std::move(next_dist);
  }
  return dendrogram;
}

std::string pca_to_json(const PcaResult& result,
                        const std::vector<int>& years) {
  nlohmann::ordered_json doc;
  doc["labels"] = years;
  nlohmann::ordered_json projections = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < result.projections.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < result.projections.cols(); ++j)
      row.push_back(result.projections(i, j));
    projections.push_back(row);
  }
  doc["projections"] = projections;
  doc["explained_variance_ratio"] = result.explained_variance_ratio;
  return doc.dump(2);
}

namespace {

nlohmann::ordered_json dendrogram_node(const Dendrogram& dendrogram,
                                       std::size_t node) {
  const std::size_t leaf_count = dendrogram.leaves.size();
  nlohmann::ordered_json doc;
  if (node < leaf_count) {
    doc["label"] = dendrogram.leaves[node];
    return doc;
  }
  const Merge& merge = dendrogram.merges[node - leaf_count];
  doc["left"] = dendrogram_node(dendrogram, merge.a);
  doc["right"] = dendrogram_node(dendrogram, merge.b);
  doc["height"] = merge.height;
  return doc;
}

double node_height(const Dendrogram& dendrogram, std::size_t node) {
  const std::size_t leaf_count = dendrogram.leaves.size();
  return node < leaf_count ? 0.0
                           : dendrogram.merges[node - leaf_count].height;
}

std::string newick_node(const Dendrogram& dendrogram, std::size_t node) {
  const std::size_t leaf_count = dendrogram.leaves.size();
  if (node < leaf_count) return newick_label(dendrogram.leaves[node]);
  const Merge& merge = dendrogram.merges[node - leaf_count];
  const std::string left = newick_node(dendrogram, merge.a);
  const std::string right = newick_node(dendrogram, merge.b);
  return "(" + left + ":" +
         format_double(merge.height - node_height(dendrogram, merge.a)) +
         "," + right + ":" +
         format_double(merge.height - node_height(dendrogram, merge.b)) + ")";
}

}  // namespace

std::string dendrogram_to_json(const Dendrogram& dendrogram) {
  if (dendrogram.leaves.empty()) return "{}";
  const std::size_t root =
      dendrogram.leaves.size() + dendrogram.merges.size() - 1;
  return dendrogram_node(dendrogram,
                         dendrogram.merges.empty() ? 0 : root)
      .dump(2);
}

std::string dendrogram_to_newick(const Dendrogram& dendrogram) {
  if (dendrogram.leaves.empty()) return ";";
  const std::size_t root =
      dendrogram.leaves.size() + dendrogram.merges.size() - 1;
  return newick_node(dendrogram, dendrogram.merges.empty() ? 0 : root) + ";";
}

void write_report_csv(std::ostream& out,
                      const std::vector<CompanyReport>& reports) {
  out << "entity,score,irr_variance,avg_volatility,rank\n";
  for (const auto& report : reports) {
    out << report.entity_id << ',' << format_double(report.score) << ','
        << format_double(report.irr_variance) << ','
        << format_double(report.avg_volatility) << ',' << report.rank << '\n';
  }
}

}  // namespace irrevis
