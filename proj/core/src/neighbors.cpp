#include "classif/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "classif/parallel.hpp"

namespace classif {
namespace {

constexpr std::size_t kLeafSize = 16;

using Candidate = std::pair<double, std::size_t>;

NeighborList to_list(std::vector<Candidate>& found) {
  std::sort(found.begin(), found.end());
  NeighborList out;
  out.indices.reserve(found.size());
  out.distances.reserve(found.size());
  for (const auto& [dist, idx] : found) {
    out.indices.push_back(idx);
    out.distances.push_back(dist);
  }
  return out;
}

void check_row(const LabeledDataset& dataset, std::size_t row) {
  if (row >= dataset.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "query index " + std::to_string(row) +
                                                " out of range for " +
                                                std::to_string(dataset.size()) + " rows");
  }
}

void check_k(std::size_t k, std::size_t available) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (k > available) {
    throw Error(ErrorKind::KTooLarge, "k = " + std::to_string(k) + " but only " +
                                          std::to_string(available) + " candidates");
  }
}

}  // namespace

NeighborList neighbors_radius(const LabeledDataset& dataset, std::size_t query_index,
                              double theta, MetricKind metric) {
  check_row(dataset, query_index);
  if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  const auto query = dataset.row(query_index);
  std::vector<Candidate> found;
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    if (j == query_index) continue;
    const double dist = distance(metric, query, dataset.row(j));
    if (dist < theta) found.emplace_back(dist, j);
  }
  return to_list(found);
}

NeighborList neighbors_k(const LabeledDataset& dataset, std::size_t query_index, std::size_t k,
                         MetricKind metric) {
  check_row(dataset, query_index);
  check_k(k, dataset.size() - 1);
  const auto query = dataset.row(query_index);
  std::vector<Candidate> all;
  all.reserve(dataset.size() - 1);
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    if (j == query_index) continue;
    all.emplace_back(distance(metric, query, dataset.row(j)), j);
  }
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
  all.resize(k);
  return to_list(all);
}

NeighborIndex::NeighborIndex(const LabeledDataset& dataset, MetricKind metric, bool brute_force)
    : metric_(metric),
      backend_(brute_force || !is_coordinate_separable(metric) ? IndexBackend::BruteForce
                                                               : IndexBackend::KdTree),
      n_(dataset.size()),
      d_(dataset.dims()) {
  order_.resize(n_);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (backend_ == IndexBackend::KdTree) {
    // build() permutes order_ while points_ is still in dataset row order
    points_ = dataset.features().values;
    build(0, n_);
    std::vector<double> reordered(n_ * d_);
    for (std::size_t pos = 0; pos < n_; ++pos) {
      const auto src = dataset.row(order_[pos]);
      std::copy(src.begin(), src.end(), reordered.begin() + static_cast<std::ptrdiff_t>(pos * d_));
    }
    points_ = std::move(reordered);
  } else {
    points_ = dataset.features().values;
  }
  position_.resize(n_);
  for (std::size_t pos = 0; pos < n_; ++pos) position_[order_[pos]] = pos;
}

int NeighborIndex::build(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end, -1, -1});
  box_lo_.resize(nodes_.size() * d_);
  box_hi_.resize(nodes_.size() * d_);

  double* lo = box_lo_.data() + static_cast<std::size_t>(id) * d_;
  double* hi = box_hi_.data() + static_cast<std::size_t>(id) * d_;
  std::fill(lo, lo + d_, std::numeric_limits<double>::infinity());
  std::fill(hi, hi + d_, -std::numeric_limits<double>::infinity());
  for (std::size_t pos = begin; pos < end; ++pos) {
    const double* p = points_.data() + order_[pos] * d_;
    for (std::size_t j = 0; j < d_; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  if (end - begin <= kLeafSize) return id;

  std::size_t split_dim = 0;
  double widest = -1.0;
  for (std::size_t j = 0; j < d_; ++j) {
    if (hi[j] - lo[j] > widest) {
      widest = hi[j] - lo[j];
      split_dim = j;
    }
  }
  if (!(widest > 0.0)) return id;  // all points coincide

  const std::size_t mid = begin + (end - begin) / 2;
  const auto key = [&](std::size_t row) {
    return std::make_pair(points_[row * d_ + split_dim], row);
  };
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

// Accumulates per-coordinate gaps in the same order and with the same
// operations as the distance kernels. Rounding is monotone, so the result
// never exceeds the computed distance to any point inside the box.
double NeighborIndex::lower_bound(const double* query, int node) const noexcept {
  const double* lo = box_lo_.data() + static_cast<std::size_t>(node) * d_;
  const double* hi = box_hi_.data() + static_cast<std::size_t>(node) * d_;
  double acc = 0.0;
  for (std::size_t j = 0; j < d_; ++j) {
    double gap = 0.0;
    if (query[j] < lo[j]) {
      gap = std::abs(query[j] - lo[j]);
    } else if (query[j] > hi[j]) {
      gap = std::abs(query[j] - hi[j]);
    }
    switch (metric_) {
      case MetricKind::L1: acc += gap; break;
      case MetricKind::L2: acc += gap * gap; break;
      default:
        if (gap > acc) acc = gap;
        break;
    }
  }
  return metric_ == MetricKind::L2 ? std::sqrt(acc) : acc;
}

void NeighborIndex::check_query(std::span<const double> query) const {
  if (query.size() != d_) {
    throw Error(ErrorKind::DimensionMismatch, "query has " + std::to_string(query.size()) +
                                                  " coordinates, index has " +
                                                  std::to_string(d_));
  }
}

NeighborList NeighborIndex::radius(std::span<const double> query, double theta,
                                   std::size_t exclude) const {
  check_query(query);
  if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  std::vector<Candidate> found;
  const double* q = query.data();

  if (backend_ == IndexBackend::BruteForce) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == exclude) continue;
      const double dist = detail::unchecked_distance(metric_, q, point(j), d_);
      if (dist < theta) found.emplace_back(dist, j);
    }
    return to_list(found);
  }

  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (lower_bound(q, id) >= theta) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      for (std::size_t pos = node.begin; pos < node.end; ++pos) {
        const std::size_t row = order_[pos];
        if (row == exclude) continue;
        const double dist = detail::unchecked_distance(metric_, q, point(pos), d_);
        if (dist < theta) found.emplace_back(dist, row);
      }
    } else {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }
  return to_list(found);
}

NeighborList NeighborIndex::nearest(std::span<const double> query, std::size_t k,
                                    std::size_t exclude) const {
  check_query(query);
  check_k(k, exclude < n_ ? n_ - 1 : n_);
  const double* q = query.data();

  // max-heap on (distance, row): top is the current k-th best
  std::priority_queue<Candidate> heap;
  const auto offer = [&](double dist, std::size_t row) {
    if (heap.size() < k) {
      heap.emplace(dist, row);
    } else if (Candidate(dist, row) < heap.top()) {
      heap.pop();
      heap.emplace(dist, row);
    }
  };

  if (backend_ == IndexBackend::BruteForce) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == exclude) continue;
      offer(detail::unchecked_distance(metric_, q, point(j), d_), j);
    }
  } else {
    struct Frame {
      int node;
      double bound;
    };
    std::vector<Frame> stack{{0, lower_bound(q, 0)}};
    while (!stack.empty()) {
      const Frame frame = stack.back();
      stack.pop_back();
      // A bound equal to the k-th distance can still hide a smaller row index.
      if (heap.size() == k && frame.bound > heap.top().first) continue;
      const Node& node = nodes_[static_cast<std::size_t>(frame.node)];
      if (node.left < 0) {
        for (std::size_t pos = node.begin; pos < node.end; ++pos) {
          const std::size_t row = order_[pos];
          if (row == exclude) continue;
          offer(detail::unchecked_distance(metric_, q, point(pos), d_), row);
        }
        continue;
      }
      const double bl = lower_bound(q, node.left);
      const double br = lower_bound(q, node.right);
      // push the farther child first so the nearer one is explored next
      if (bl <= br) {
        stack.push_back({node.right, br});
        stack.push_back({node.left, bl});
      } else {
        stack.push_back({node.left, bl});
        stack.push_back({node.right, br});
      }
    }
  }

  std::vector<Candidate> found;
  found.reserve(heap.size());
  while (!heap.empty()) {
    found.push_back(heap.top());
    heap.pop();
  }
  return to_list(found);
}

NeighborList NeighborIndex::radius_of(std::size_t row, double theta) const {
  if (row >= n_) throw Error(ErrorKind::IndexOutOfRange, "query index " + std::to_string(row));
  return radius(std::span<const double>(point_of_row(row), d_), theta, row);
}

NeighborList NeighborIndex::nearest_of(std::size_t row, std::size_t k) const {
  if (row >= n_) throw Error(ErrorKind::IndexOutOfRange, "query index " + std::to_string(row));
  return nearest(std::span<const double>(point_of_row(row), d_), k, row);
}

NeighborIndex build_index(const LabeledDataset& dataset, MetricKind metric, bool brute_force) {
  return NeighborIndex(dataset, metric, brute_force);
}

double threshold_from_fraction(const LabeledDataset& dataset, double fraction, MetricKind metric,
                               std::size_t workers) {
  const std::size_t n = dataset.size();
  if (n < 2) throw Error(ErrorKind::DatasetTooSmall, "need at least two points");
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "fraction must lie in (0, 1]");
  }
  std::size_t m = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  m = std::clamp<std::size_t>(m, 1, n - 1);

  const NeighborIndex index(dataset, metric);
  std::vector<double> per_point(n);
  parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const NeighborList nb = index.nearest_of(i, m);
      double sum = 0.0;
      for (double dist : nb.distances) sum += dist;
      per_point[i] = sum / static_cast<double>(m);
    }
  });
  return pairwise_sum(per_point) / static_cast<double>(n);
}

std::size_t k_from_fraction(std::size_t n, double fraction, std::size_t k_min, std::size_t k_max) {
  if (n < 2) throw Error(ErrorKind::DatasetTooSmall, "need at least two points");
  if (k_min < 1 || k_max < k_min) {
    throw Error(ErrorKind::InvalidArgument, "need 1 <= k_min <= k_max");
  }
  if (!(fraction > 0.0)) throw Error(ErrorKind::InvalidArgument, "fraction must be positive");
  const auto raw = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  const std::size_t upper = std::min(k_max, n - 1);
  return std::min(std::max(raw, k_min), upper);
}

}  // namespace classif
