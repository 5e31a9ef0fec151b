#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "classif/core.hpp"
#include "classif/metrics.hpp"

namespace classif {

inline constexpr std::size_t kNoExclusion = std::numeric_limits<std::size_t>::max();

/// Dataset rows near a query, sorted by (distance, row index) ascending.
struct NeighborList {
  std::vector<std::size_t> indices;
  std::vector<double> distances;

  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
};

/// Brute-force reference queries. The query row is excluded by index, so
/// other rows with identical coordinates are still returned.
NeighborList neighbors_radius(const LabeledDataset& dataset, std::size_t query_index,
                              double theta, MetricKind metric);
NeighborList neighbors_k(const LabeledDataset& dataset, std::size_t query_index, std::size_t k,
                         MetricKind metric);

enum class IndexBackend { KdTree, BruteForce };

/// Neighbor search structure over a snapshot of a dataset's features.
///
/// L1, L2 and Chebyshev get a kd-tree; the other metrics (and any metric when
/// `brute_force` is set) scan every row. Both backends compute distances with
/// the same kernels and prune only on bounds that can never exceed a computed
/// distance, so their results agree element for element.
class NeighborIndex {
 public:
  NeighborIndex(const LabeledDataset& dataset, MetricKind metric, bool brute_force = false);

  IndexBackend backend() const noexcept { return backend_; }
  MetricKind metric() const noexcept { return metric_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t dims() const noexcept { return d_; }

  /// Rows with distance strictly below theta. `exclude` names a row to skip.
  NeighborList radius(std::span<const double> query, double theta,
                      std::size_t exclude = kNoExclusion) const;
  /// The k closest rows, ties broken by smaller row index.
  NeighborList nearest(std::span<const double> query, std::size_t k,
                       std::size_t exclude = kNoExclusion) const;

  NeighborList radius_of(std::size_t row, double theta) const;
  NeighborList nearest_of(std::size_t row, std::size_t k) const;

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::size_t begin, std::size_t end);
  double lower_bound(const double* query, int node) const noexcept;
  const double* point(std::size_t pos) const noexcept { return points_.data() + pos * d_; }
  const double* point_of_row(std::size_t row) const noexcept { return point(position_[row]); }
  void check_query(std::span<const double> query) const;

  MetricKind metric_;
  IndexBackend backend_;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> points_;       // rows in tree order
  std::vector<std::size_t> order_;   // tree position -> dataset row
  std::vector<std::size_t> position_;  // dataset row -> tree position
  std::vector<Node> nodes_;
  std::vector<double> box_lo_;       // per node, d values
  std::vector<double> box_hi_;
};

NeighborIndex build_index(const LabeledDataset& dataset, MetricKind metric,
                          bool brute_force = false);

/// Mean over all points of the mean distance to their m nearest neighbors,
/// with m = max(1, round(fraction * n)) capped at n - 1. Labels are ignored.
/// Per-point sums run in neighbor order; the sum over points is pairwise.
double threshold_from_fraction(const LabeledDataset& dataset, double fraction, MetricKind metric,
                               std::size_t workers = 1);

/// clamp(round(fraction * n), k_min, min(k_max, n - 1)); the upper bound wins
/// when the interval is empty.
std::size_t k_from_fraction(std::size_t n, double fraction, std::size_t k_min, std::size_t k_max);

}  // namespace classif
