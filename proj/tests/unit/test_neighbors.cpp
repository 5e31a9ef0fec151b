#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "classif/neighbors.hpp"
#include "classif/parallel.hpp"
#include "helpers.hpp"

namespace classif {
namespace {

using test::make;
using test::random_cloud;
using Idx = std::vector<std::size_t>;

TEST(NeighborsRadius, Examples) {
  const auto ds = make(1, {0, 0.5, 2}, {0, 1, 0});
  EXPECT_EQ(neighbors_radius(ds, 0, 1.0, MetricKind::L2).indices, Idx{1});
  EXPECT_TRUE(neighbors_radius(ds, 0, 0.5, MetricKind::L2).empty());
  const auto dup = make(1, {0, 0}, {0, 1});
  EXPECT_EQ(neighbors_radius(dup, 0, 0.1, MetricKind::L2).indices, Idx{1});
}

TEST(NeighborsK, Examples) {
  const auto ds = make(1, {0, 1, 2, 3}, {0, 1, 0, 1});
  EXPECT_EQ(neighbors_k(ds, 0, 2, MetricKind::L1).indices, (Idx{1, 2}));
  EXPECT_EQ(neighbors_k(ds, 0, 3, MetricKind::L1).indices, (Idx{1, 2, 3}));
  const auto tie = make(1, {0, -1, 1}, {0, 1, 1});
  EXPECT_EQ(neighbors_k(tie, 0, 1, MetricKind::L2).indices, Idx{1});
}

TEST(Neighbors, Errors) {
  const auto ds = make(1, {0, 1, 2}, {0, 1, 0});
  EXPECT_ERROR_KIND(neighbors_k(ds, 0, 3, MetricKind::L2), ErrorKind::KTooLarge);
  EXPECT_ERROR_KIND(neighbors_k(ds, 5, 1, MetricKind::L2), ErrorKind::IndexOutOfRange);
  EXPECT_ERROR_KIND(neighbors_radius(ds, 3, 1.0, MetricKind::L2), ErrorKind::IndexOutOfRange);
  EXPECT_ERROR_KIND(neighbors_radius(ds, 0, 0.0, MetricKind::L2), ErrorKind::InvalidArgument);
  const NeighborIndex index(ds, MetricKind::L2);
  const std::vector<double> wrong{1.0, 2.0};
  EXPECT_ERROR_KIND(index.nearest(wrong, 1), ErrorKind::DimensionMismatch);
}

TEST(NeighborIndex, BackendSelection) {
  const auto ds = random_cloud(1, 50, 2, 2);
  EXPECT_EQ(build_index(ds, MetricKind::L2).backend(), IndexBackend::KdTree);
  EXPECT_EQ(build_index(ds, MetricKind::Chebyshev).backend(), IndexBackend::KdTree);
  EXPECT_EQ(build_index(ds, MetricKind::Canberra).backend(), IndexBackend::BruteForce);
  EXPECT_EQ(build_index(ds, MetricKind::Hamming).backend(), IndexBackend::BruteForce);
  EXPECT_EQ(build_index(ds, MetricKind::L1, true).backend(), IndexBackend::BruteForce);
}

void expect_same(const NeighborList& a, const NeighborList& b) {
  ASSERT_EQ(a.indices, b.indices);
  ASSERT_EQ(a.distances, b.distances);
}

TEST(NeighborIndex, MatchesBruteForceOnRandomData) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const bool lattice = seed % 3 == 0;
    const auto ds = random_cloud(seed, 150 + 40 * seed, 1 + seed % 4, 3, lattice);
    for (MetricKind m : kAllMetrics) {
      const NeighborIndex tree(ds, m);
      const double theta = lattice ? 1.0 : 0.35;
      for (std::size_t q = 0; q < ds.size(); q += 7) {
        expect_same(tree.nearest_of(q, 9), neighbors_k(ds, q, 9, m));
        expect_same(tree.radius_of(q, theta), neighbors_radius(ds, q, theta, m));
      }
    }
  }
}

TEST(NeighborIndex, TenThousandPointsAgainstBruteForce) {
  const auto ds = random_cloud(42, 10000, 2, 2);
  Rng rng(43);
  std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  const NeighborIndex tree(ds, MetricKind::L2);
  const NeighborIndex brute(ds, MetricKind::L2, true);
  for (int t = 0; t < 100; ++t) {
    const std::size_t q = pick(rng);
    expect_same(tree.nearest_of(q, 25), neighbors_k(ds, q, 25, MetricKind::L2));
    expect_same(tree.radius_of(q, 0.03), neighbors_radius(ds, q, 0.03, MetricKind::L2));
    const std::vector<double> free_query{u(rng), u(rng)};
    expect_same(tree.nearest(free_query, 25), brute.nearest(free_query, 25));
    expect_same(tree.radius(free_query, 0.05), brute.radius(free_query, 0.05));
  }
}

TEST(NeighborProperties, StrictnessExclusionOrderingSubset) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto ds = random_cloud(100 + seed, 120, 2, 2, seed % 2 == 0);
    for (MetricKind m : kAllMetrics) {
      const NeighborIndex index(ds, m);
      for (std::size_t q = 0; q < ds.size(); q += 11) {
        const auto r = index.radius_of(q, 0.8);
        for (std::size_t i = 0; i < r.size(); ++i) {
          EXPECT_LT(r.distances[i], 0.8);
          EXPECT_NE(r.indices[i], q);
          EXPECT_EQ(r.distances[i], distance(m, ds.row(q), ds.row(r.indices[i])));
        }
        const auto k = index.nearest_of(q, 10);
        ASSERT_EQ(k.size(), 10u);
        std::set<std::size_t> unique(k.indices.begin(), k.indices.end());
        EXPECT_EQ(unique.size(), k.size());
        EXPECT_EQ(unique.count(q), 0u);
        for (std::size_t i = 1; i < k.size(); ++i) {
          EXPECT_TRUE(k.distances[i - 1] < k.distances[i] ||
                      (k.distances[i - 1] == k.distances[i] && k.indices[i - 1] < k.indices[i]));
        }
        // k-NN set is inside the radius set just above the k-th distance, unless ties straddle it.
        const double above = std::nextafter(k.distances.back(), 1e300);
        const auto ball = index.radius_of(q, above);
        std::set<std::size_t> ball_set(ball.indices.begin(), ball.indices.end());
        for (std::size_t i : k.indices) EXPECT_EQ(ball_set.count(i), 1u);
      }
    }
  }
}

// Independent recomputation with the same summation order.
double threshold_oracle(const LabeledDataset& ds, double fraction, MetricKind m) {
  const std::size_t n = ds.size();
  std::size_t count = static_cast<std::size_t>(std::llround(fraction * double(n)));
  count = std::clamp<std::size_t>(count, 1, n - 1);
  std::vector<double> per(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) all.emplace_back(distance(m, ds.row(i), ds.row(j)), j);
    }
    std::sort(all.begin(), all.end());
    double s = 0.0;
    for (std::size_t t = 0; t < count; ++t) s += all[t].first;
    per[i] = s / double(count);
  }
  std::function<double(std::size_t, std::size_t)> tree = [&](std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return per[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return tree(lo, mid) + tree(mid, hi);
  };
  return tree(0, n) / double(n);
}

TEST(ThresholdFromFraction, Examples) {
  const auto ds = make(1, {0, 1, 2}, {0, 1, 0});
  EXPECT_EQ(threshold_from_fraction(ds, 0.3, MetricKind::L2), 1.0);
  // fraction 1 on 3 points: mean distances 1.5, 1, 1.5.
  EXPECT_DOUBLE_EQ(threshold_from_fraction(ds, 1.0, MetricKind::L2), 4.0 / 3.0);
  EXPECT_EQ(threshold_from_fraction(ds, 1.0, MetricKind::L2), threshold_oracle(ds, 1.0, MetricKind::L2));
}

TEST(ThresholdFromFraction, MatchesQuadraticRecomputation) {
  const auto cloud = random_cloud(77, 100, 2, 2);
  EXPECT_EQ(threshold_from_fraction(cloud, 0.05, MetricKind::L2),
            threshold_oracle(cloud, 0.05, MetricKind::L2));
  for (MetricKind m : kAllMetrics) {
    const auto ds = random_cloud(78, 230, 3, 2);
    for (double f : {0.01, 0.1, 0.5}) {
      EXPECT_EQ(threshold_from_fraction(ds, f, m), threshold_oracle(ds, f, m)) << to_string(m);
      EXPECT_EQ(threshold_from_fraction(ds, f, m, 3), threshold_from_fraction(ds, f, m, 1));
    }
  }
}

TEST(ThresholdFromFraction, Errors) {
  const auto ds = make(1, {0, 1, 2}, {0, 1, 0});
  EXPECT_ERROR_KIND(threshold_from_fraction(ds, 0.0, MetricKind::L2), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(threshold_from_fraction(ds, 1.5, MetricKind::L2), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(threshold_from_fraction(make(1, {0}, {0}), 0.5, MetricKind::L2),
                    ErrorKind::DatasetTooSmall);
}

TEST(KFromFraction, Examples) {
  EXPECT_EQ(k_from_fraction(1000, 0.015, 6, 32), 15u);
  EXPECT_EQ(k_from_fraction(100, 0.015, 6, 32), 6u);
  EXPECT_EQ(k_from_fraction(10000, 0.015, 6, 32), 32u);
  EXPECT_EQ(k_from_fraction(5, 0.015, 6, 32), 4u);
  EXPECT_ERROR_KIND(k_from_fraction(100, 0.015, 0, 32), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(k_from_fraction(100, 0.015, 7, 6), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(k_from_fraction(1, 0.015, 6, 32), ErrorKind::DatasetTooSmall);
}

TEST(Parallel, PairwiseSumAndChunks) {
  const std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(pairwise_sum(v), (1e16 + 1.0) + (-1e16 + 1.0));
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
  for (std::size_t workers : {1, 2, 3, 8}) {
    std::vector<int> hits(1001, 0);
    parallel_for(hits.size(), workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  EXPECT_THROW(parallel_for(10, 2, [](std::size_t, std::size_t) { throw std::runtime_error("x"); }),
               std::runtime_error);
  EXPECT_GE(resolve_workers(0), 1u);
  EXPECT_EQ(resolve_workers(3) <= 3, true);
}

}  // namespace
}  // namespace classif
