#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "classif/metrics.hpp"
#include "helpers.hpp"

namespace classif {
namespace {

using V = std::vector<double>;

TEST(Metrics, HandArithmetic) {
  const V a{0, 0}, b{1, 1};
  EXPECT_DOUBLE_EQ(distance(MetricKind::L1, a, b), 2.0);
  EXPECT_NEAR(distance(MetricKind::L2, a, b), 1.41421356, 1e-8);
  EXPECT_DOUBLE_EQ(distance(MetricKind::Chebyshev, a, b), 1.0);
  EXPECT_DOUBLE_EQ(distance(MetricKind::Hamming, V{0, 1, 2}, V{0, 9, 2}), 1.0);
  EXPECT_DOUBLE_EQ(distance(MetricKind::Canberra, V{1, 3}, V{3, 1}), 1.0);
  EXPECT_DOUBLE_EQ(distance(MetricKind::BrayCurtis, V{1, 3}, V{3, 1}), 0.5);
}

TEST(Metrics, ZeroConventions) {
  EXPECT_EQ(distance(MetricKind::Canberra, V{0, 2}, V{0, 1}), 1.0 / 3.0);
  EXPECT_EQ(distance(MetricKind::Canberra, V{0, 0}, V{0, 0}), 0.0);
  EXPECT_EQ(distance(MetricKind::BrayCurtis, V{0, 0}, V{0, 0}), 0.0);
  // Signed data: denominator is |a + b| summed, so opposite vectors give 0 denominators.
  EXPECT_EQ(distance(MetricKind::BrayCurtis, V{1, -1}, V{-1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(distance(MetricKind::BrayCurtis, V{1, -2}, V{2, -1}), 2.0 / 6.0);
}

TEST(Metrics, DimensionMismatch) {
  for (MetricKind m : kAllMetrics) {
    EXPECT_ERROR_KIND(distance(m, V{1, 2}, V{1}), ErrorKind::DimensionMismatch);
    EXPECT_ERROR_KIND(distance(m, V{}, V{}), ErrorKind::DimensionMismatch);
  }
}

TEST(Metrics, NamesRoundTrip) {
  for (MetricKind m : kAllMetrics) {
    const auto parsed = parse_metric(to_string(m));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, m);
  }
  EXPECT_EQ(to_string(MetricKind::BrayCurtis), "braycurtis");
  EXPECT_FALSE(parse_metric("euclid").has_value());
  EXPECT_TRUE(is_coordinate_separable(MetricKind::Chebyshev));
  EXPECT_FALSE(is_coordinate_separable(MetricKind::Canberra));
}

V random_vector(Rng& rng, std::size_t d, bool lattice) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> g(-1, 1);
  V v(d);
  for (auto& x : v) x = lattice ? g(rng) : u(rng);
  return v;
}

TEST(MetricProperties, SymmetryIdentityNonNegativity) {
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t d = 1 + t % 7;
    const bool lattice = t % 3 == 0;
    const V a = random_vector(rng, d, lattice);
    const V b = random_vector(rng, d, lattice);
    for (MetricKind m : kAllMetrics) {
      const double ab = distance(m, a, b);
      EXPECT_EQ(ab, distance(m, b, a)) << to_string(m);
      EXPECT_EQ(distance(m, a, a), 0.0) << to_string(m);
      EXPECT_GE(ab, 0.0) << to_string(m);
      EXPECT_TRUE(std::isfinite(ab));
    }
  }
}

TEST(MetricProperties, TriangleInequality) {
  Rng rng(6);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t d = 1 + t % 6;
    const bool lattice = t % 4 == 0;
    const V a = random_vector(rng, d, lattice);
    const V b = random_vector(rng, d, lattice);
    const V c = random_vector(rng, d, lattice);
    for (MetricKind m : {MetricKind::L1, MetricKind::L2, MetricKind::Chebyshev, MetricKind::Hamming,
                         MetricKind::Canberra}) {
      const double lhs = distance(m, a, c);
      const double rhs = distance(m, a, b) + distance(m, b, c);
      EXPECT_LE(lhs, rhs * (1.0 + 1e-12) + 1e-15) << to_string(m);
    }
  }
}

TEST(MetricProperties, CheckedAndUncheckedAgree) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const V a = random_vector(rng, 5, false);
    const V b = random_vector(rng, 5, false);
    for (MetricKind m : kAllMetrics) {
      EXPECT_EQ(distance(m, a, b), detail::unchecked_distance(m, a.data(), b.data(), 5));
    }
  }
}

}  // namespace
}  // namespace classif
