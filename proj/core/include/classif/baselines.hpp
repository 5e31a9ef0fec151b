#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "classif/core.hpp"
#include "classif/neighbors.hpp"

namespace classif {

struct SplitSpec {
  double train_fraction = 2.0 / 3.0;
  bool stratified = true;
  std::uint64_t seed = 0;
};

/// Disjoint train/test row sets covering the dataset, each sorted ascending.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Throws DegenerateSplit if either side would miss a class.
Split make_split(const LabeledDataset& dataset, const SplitSpec& spec);

/// Most frequent label; ties go to the smaller class index.
ClassId majority_class(const LabeledDataset& dataset);

/// Majority label of the k nearest training rows (ties: smaller class index).
/// The query is not a training member, so nothing is excluded.
ClassId knn_predict(const LabeledDataset& train, std::size_t k, MetricKind metric,
                    std::span<const double> query);
ClassId knn_predict(const NeighborIndex& index, const LabeledDataset& train, std::size_t k,
                    std::span<const double> query);

/// Majority label among training rows closer than theta; `fallback` when the
/// ball is empty.
ClassId radius_predict(const LabeledDataset& train, double theta, MetricKind metric,
                       std::span<const double> query, ClassId fallback);
ClassId radius_predict(const NeighborIndex& index, const LabeledDataset& train, double theta,
                       std::span<const double> query, ClassId fallback);

enum class ClassifierKind { KNearest, Radius };

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::KNearest;
  std::size_t k = 5;
  double theta = 1.0;
  MetricKind metric = MetricKind::L2;
};

struct AccuracyStats {
  std::vector<double> accuracies;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

/// Test accuracy over `repeats` splits; split r uses seed mix_seed(split.seed, r).
AccuracyStats evaluate(const LabeledDataset& dataset, const SplitSpec& split,
                       const ClassifierConfig& classifier, std::size_t repeats = 10,
                       std::size_t workers = 1);

}  // namespace classif
