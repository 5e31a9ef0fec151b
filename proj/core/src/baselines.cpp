#include "classif/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "classif/estimator.hpp"
#include "classif/parallel.hpp"
#include "classif/random.hpp"

namespace classif {
namespace {

ClassId vote(const LabeledDataset& train, const NeighborList& nb) {
  std::vector<std::size_t> counts(train.num_classes(), 0);
  for (std::size_t j : nb.indices) ++counts[train.label(j)];
  // max_element returns the first maximum, i.e. the smallest class index
  return static_cast<ClassId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}  // namespace

Split make_split(const LabeledDataset& dataset, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "train fraction must lie in (0, 1)");
  }
  Rng rng(spec.seed);
  Split split;
  if (spec.stratified) {
    std::vector<std::vector<std::size_t>> members(dataset.num_classes());
    for (std::size_t i = 0; i < dataset.size(); ++i) members[dataset.label(i)].push_back(i);
    for (std::size_t c = 0; c < members.size(); ++c) {
      auto& rows = members[c];
      if (rows.size() < 2) {
        throw Error(ErrorKind::DegenerateSplit, "class '" +
                                                    dataset.classes().name(static_cast<ClassId>(c)) +
                                                    "' has fewer than two rows");
      }
      std::shuffle(rows.begin(), rows.end(), rng);
      auto take = static_cast<std::size_t>(
          std::llround(spec.train_fraction * static_cast<double>(rows.size())));
      take = std::clamp<std::size_t>(take, 1, rows.size() - 1);
      split.train.insert(split.train.end(), rows.begin(),
                         rows.begin() + static_cast<std::ptrdiff_t>(take));
      split.test.insert(split.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(take),
                        rows.end());
    }
  } else {
    std::vector<std::size_t> rows(dataset.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto take = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(rows.size())));
    split.train.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take));
    split.test.assign(rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());

  for (const auto* side : {&split.train, &split.test}) {
    std::vector<bool> seen(dataset.num_classes(), false);
    for (std::size_t i : *side) seen[dataset.label(i)] = true;
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorKind::DegenerateSplit, "a partition is missing at least one class");
    }
  }
  return split;
}

ClassId majority_class(const LabeledDataset& dataset) {
  std::vector<std::size_t> counts(dataset.num_classes(), 0);
  for (ClassId label : dataset.labels()) ++counts[label];
  return static_cast<ClassId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

ClassId knn_predict(const NeighborIndex& index, const LabeledDataset& train, std::size_t k,
                    std::span<const double> query) {
  return vote(train, index.nearest(query, k));
}

ClassId knn_predict(const LabeledDataset& train, std::size_t k, MetricKind metric,
                    std::span<const double> query) {
  return knn_predict(NeighborIndex(train, metric), train, k, query);
}

ClassId radius_predict(const NeighborIndex& index, const LabeledDataset& train, double theta,
                       std::span<const double> query, ClassId fallback) {
  const NeighborList nb = index.radius(query, theta);
  return nb.empty() ? fallback : vote(train, nb);
}

ClassId radius_predict(const LabeledDataset& train, double theta, MetricKind metric,
                       std::span<const double> query, ClassId fallback) {
  return radius_predict(NeighborIndex(train, metric), train, theta, query, fallback);
}

AccuracyStats evaluate(const LabeledDataset& dataset, const SplitSpec& split,
                       const ClassifierConfig& classifier, std::size_t repeats,
                       std::size_t workers) {
  if (repeats == 0) throw Error(ErrorKind::InvalidArgument, "need at least one repeat");
  AccuracyStats stats;
  for (std::size_t r = 0; r < repeats; ++r) {
    SplitSpec spec = split;
    spec.seed = mix_seed(split.seed, r);
    const Split parts = make_split(dataset, spec);
    const LabeledDataset train = dataset.subset(parts.train);
    const NeighborIndex index(train, classifier.metric);
    const ClassId fallback = majority_class(train);

    std::vector<unsigned char> hit(parts.test.size(), 0);
    parallel_for(parts.test.size(), resolve_workers(workers),
                 [&](std::size_t begin, std::size_t end) {
                   for (std::size_t t = begin; t < end; ++t) {
                     const std::size_t row = parts.test[t];
                     const ClassId predicted =
                         classifier.kind == ClassifierKind::KNearest
                             ? knn_predict(index, train, classifier.k, dataset.row(row))
                             : radius_predict(index, train, classifier.theta, dataset.row(row),
                                              fallback);
                     hit[t] = predicted == dataset.label(row) ? 1 : 0;
                   }
                 });
    const auto correct = std::count(hit.begin(), hit.end(), static_cast<unsigned char>(1));
    stats.accuracies.push_back(static_cast<double>(correct) /
                               static_cast<double>(parts.test.size()));
  }
  const MeanStd ms = mean_std(stats.accuracies);
  stats.mean = ms.mean;
  stats.std = ms.std;
  return stats;
}

}  // namespace classif
