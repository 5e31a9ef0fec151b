#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "classif/core.hpp"
#include "classif/random.hpp"

namespace classif::test {

#define EXPECT_ERROR_KIND(stmt, expected_kind)                      \
  do {                                                              \
    try {                                                           \
      stmt;                                                         \
      ADD_FAILURE() << "no exception from " #stmt;                  \
    } catch (const ::classif::Error& e_) {                          \
      EXPECT_EQ(e_.kind(), expected_kind) << e_.what();             \
    }                                                               \
  } while (0)

inline LabeledDataset make(std::size_t d, std::vector<double> values, std::vector<ClassId> labels,
                           std::size_t classes = 0) {
  if (classes == 0) {
    for (ClassId l : labels) classes = std::max<std::size_t>(classes, l + 1);
  }
  const std::size_t n = values.size() / d;
  return validate_dataset(Matrix(n, d, std::move(values)), std::move(labels),
                          ClassTable::numbered(classes));
}

/// Uniform cloud in [-1, 1]^d, labels cycling through `classes` then shuffled.
/// With `lattice`, coordinates are small integers so ties and duplicates abound.
inline LabeledDataset random_cloud(std::uint64_t seed, std::size_t n, std::size_t d,
                                   std::size_t classes, bool lattice = false) {
  Rng rng(seed);
  std::vector<ClassId> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<ClassId>(i % classes);
  std::shuffle(labels.begin(), labels.end(), rng);
  Matrix x(n, d);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> g(-2, 2);
  for (double& v : x.values) v = lattice ? g(rng) : u(rng);
  return validate_dataset(std::move(x), std::move(labels), ClassTable::numbered(classes));
}

}  // namespace classif::test
