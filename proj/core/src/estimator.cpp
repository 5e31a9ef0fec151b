#include "classif/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "classif/parallel.hpp"
#include "classif/random.hpp"

namespace classif {
namespace {

constexpr double kEntropyIdentityTolerance = 1e-12;

struct PointEntropy {
  std::vector<double> entropy;
  std::vector<std::size_t> support;
};

PointEntropy point_entropies(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                             const EstimateOptions& options) {
  spec.check(dataset.size());
  const std::size_t n = dataset.size();
  const NeighborIndex index(dataset, spec.metric, options.brute_force);

  PointEntropy out;
  out.entropy.assign(n, 0.0);
  out.support.assign(n, 0);
  parallel_for(n, resolve_workers(options.workers), [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> counts(dataset.num_classes());
    for (std::size_t i = begin; i < end; ++i) {
      const NeighborList nb =
          spec.is_radius() ? index.radius_of(i, spec.theta()) : index.nearest_of(i, spec.k());
      out.support[i] = nb.size();
      if (nb.empty()) continue;  // empty ball: H = 0

      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t j : nb.indices) ++counts[dataset.label(j)];
      const std::size_t majority = *std::max_element(counts.begin(), counts.end());
      // 1 - max_a p_a with p_a = count_a / |B|
      out.entropy[i] = 1.0 - static_cast<double>(majority) / static_cast<double>(nb.size());

      if (options.verify_entropy) {
        const double full = local_entropy_full(local_probabilities(dataset, nb));
        if (!(std::abs(full - out.entropy[i]) <= kEntropyIdentityTolerance)) {
          throw Error(ErrorKind::InvalidArgument,
                      "entropy identity violated at row " + std::to_string(i));
        }
      }
    }
  });
  return out;
}

}  // namespace

ClassProbabilities local_probabilities(const LabeledDataset& dataset,
                                       const NeighborList& neighborhood) {
  ClassProbabilities out;
  out.probs.assign(dataset.num_classes(), 0.0);
  out.support_size = neighborhood.size();
  if (neighborhood.empty()) return out;

  std::vector<std::size_t> counts(dataset.num_classes(), 0);
  for (std::size_t j : neighborhood.indices) {
    if (j >= dataset.size()) {
      throw Error(ErrorKind::IndexOutOfRange, "neighbor row " + std::to_string(j));
    }
    ++counts[dataset.label(j)];
  }
  const double size = static_cast<double>(neighborhood.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    out.probs[c] = static_cast<double>(counts[c]) / size;
  }
  return out;
}

RhoHat rho_hat(const ClassProbabilities& probs) {
  if (probs.empty()) {
    throw Error(ErrorKind::EmptyNeighborhood, "rho is undefined for an empty neighborhood");
  }
  const double top = *std::max_element(probs.probs.begin(), probs.probs.end());
  const double scale = std::exp(1.0 - top);
  RhoHat out;
  out.values.reserve(probs.probs.size());
  for (double p : probs.probs) out.values.push_back(p * scale);
  return out;
}

double local_entropy(const ClassProbabilities& probs) noexcept {
  if (probs.empty() || probs.probs.empty()) return 0.0;
  return 1.0 - *std::max_element(probs.probs.begin(), probs.probs.end());
}

double local_entropy_full(const ClassProbabilities& probs) {
  if (probs.empty()) return 0.0;
  const RhoHat rho = rho_hat(probs);
  double h = 0.0;
  for (std::size_t a = 0; a < probs.probs.size(); ++a) {
    const double p = probs.probs[a];
    if (p > 0.0) h -= p * std::log(p / rho.values[a]);
  }
  return h;
}

EstimateReport classifiability(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                               const EstimateOptions& options) {
  PointEntropy pe = point_entropies(dataset, spec, options);

  EstimateReport report;
  report.n = dataset.size();
  report.d = dataset.dims();
  report.config = spec;
  report.class_proportions = class_proportions(dataset);
  report.empty_neighborhood_count =
      static_cast<std::size_t>(std::count(pe.support.begin(), pe.support.end(), std::size_t{0}));
  report.limit = 1.0 - pairwise_sum(pe.entropy) / static_cast<double>(dataset.size());
  report.per_point_entropy = std::move(pe.entropy);
  report.neighborhood_size = std::move(pe.support);
  return report;
}

std::vector<EntropyRecord> entropy_map(const LabeledDataset& dataset,
                                       const EstimateReport& report) {
  if (report.per_point_entropy.size() != dataset.size() ||
      report.neighborhood_size.size() != dataset.size()) {
    throw Error(ErrorKind::DimensionMismatch, "report does not belong to this dataset");
  }
  std::vector<EntropyRecord> out;
  out.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto row = dataset.row(i);
    out.push_back(EntropyRecord{i, dataset.label(i), report.per_point_entropy[i],
                                report.neighborhood_size[i],
                                std::vector<double>(row.begin(), row.end())});
  }
  return out;
}

std::vector<EntropyRecord> entropy_map(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                                       const EstimateOptions& options) {
  return entropy_map(dataset, classifiability(dataset, spec, options));
}

std::vector<std::size_t> stratified_counts(std::span<const std::size_t> class_counts,
                                           std::size_t size) {
  const std::size_t total = std::accumulate(class_counts.begin(), class_counts.end(),
                                            std::size_t{0});
  if (size > total) {
    throw Error(ErrorKind::InvalidArgument, "subsample larger than the dataset");
  }
  if (size < class_counts.size()) {
    throw Error(ErrorKind::SubsampleTooSmall,
                "subsample of " + std::to_string(size) + " rows cannot hold " +
                    std::to_string(class_counts.size()) + " classes");
  }
  const std::size_t classes = class_counts.size();
  std::vector<std::size_t> alloc(classes);
  std::vector<std::size_t> remainder(classes);
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    alloc[c] = class_counts[c] * size / total;
    remainder[c] = class_counts[c] * size % total;
    assigned += alloc[c];
  }
  std::vector<std::size_t> order(classes);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < size; ++i, ++assigned) ++alloc[order[i]];

  for (std::size_t c = 0; c < classes; ++c) {
    if (alloc[c] > 0) continue;
    std::size_t donor = 0;
    for (std::size_t o = 1; o < classes; ++o) {
      if (alloc[o] > alloc[donor]) donor = o;
    }
    --alloc[donor];
    alloc[c] = 1;
  }
  return alloc;
}

std::vector<std::size_t> stratified_subsample(const LabeledDataset& dataset, std::size_t size,
                                              std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> members(dataset.num_classes());
  for (std::size_t i = 0; i < dataset.size(); ++i) members[dataset.label(i)].push_back(i);
  std::vector<std::size_t> counts(members.size());
  for (std::size_t c = 0; c < members.size(); ++c) counts[c] = members[c].size();
  const std::vector<std::size_t> alloc = stratified_counts(counts, size);

  Rng rng(seed);
  std::vector<std::size_t> picked;
  picked.reserve(size);
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& rows = members[c];
    std::shuffle(rows.begin(), rows.end(), rng);
    picked.insert(picked.end(), rows.begin(),
                  rows.begin() + static_cast<std::ptrdiff_t>(alloc[c]));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

MeanStd mean_std(std::span<const double> values) noexcept {
  if (values.empty()) return {};
  const double n = static_cast<double>(values.size());
  const double mean = pairwise_sum(values) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n)};
}

namespace {

std::size_t subsample_size(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                           double fraction) {
  const auto size =
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(dataset.size())));
  if (size < dataset.num_classes() || size < 2) {
    throw Error(ErrorKind::SubsampleTooSmall,
                "fraction " + std::to_string(fraction) + " leaves " + std::to_string(size) +
                    " rows for " + std::to_string(dataset.num_classes()) + " classes");
  }
  if (!spec.is_radius() && size < spec.k() + 1) {
    throw Error(ErrorKind::SubsampleTooSmall, "subsample of " + std::to_string(size) +
                                                  " rows is too small for k = " +
                                                  std::to_string(spec.k()));
  }
  return size;
}

}  // namespace

JackknifeReport jackknife(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                          double fraction, std::size_t rounds, std::uint64_t seed,
                          const EstimateOptions& options) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "jackknife fraction must lie in (0, 1)");
  }
  if (rounds == 0) throw Error(ErrorKind::InvalidArgument, "need at least one round");
  const std::size_t size = subsample_size(dataset, spec, fraction);

  JackknifeReport report;
  report.rounds = rounds;
  report.fraction = fraction;
  report.subsample_size = size;
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto rows = stratified_subsample(dataset, size, mix_seed(seed, r));
    report.subsample_limits.push_back(classifiability(dataset.subset(rows), spec, options).limit);
  }
  report.max_limit =
      *std::max_element(report.subsample_limits.begin(), report.subsample_limits.end());
  const MeanStd ms = mean_std(report.subsample_limits);
  report.mean_limit = ms.mean;
  report.std_limit = ms.std;
  return report;
}

std::vector<SweepPoint> subsample_sweep(const LabeledDataset& dataset,
                                        const NeighborhoodSpec& spec,
                                        std::span<const double> proportions, std::size_t repeats,
                                        std::uint64_t seed, const EstimateOptions& options) {
  if (repeats == 0) throw Error(ErrorKind::InvalidArgument, "need at least one repeat");
  for (double p : proportions) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "proportions must lie in (0, 1]");
    }
  }
  std::vector<SweepPoint> curve;
  curve.reserve(proportions.size());
  for (std::size_t pi = 0; pi < proportions.size(); ++pi) {
    SweepPoint point;
    point.proportion = proportions[pi];
    point.subsample_size = subsample_size(dataset, spec, proportions[pi]);
    for (std::size_t r = 0; r < repeats; ++r) {
      const auto rows =
          stratified_subsample(dataset, point.subsample_size, mix_seed(mix_seed(seed, pi), r));
      point.limits.push_back(classifiability(dataset.subset(rows), spec, options).limit);
    }
    const MeanStd ms = mean_std(point.limits);
    point.mean_limit = ms.mean;
    point.std_limit = ms.std;
    curve.push_back(std::move(point));
  }
  return curve;
}

OverclassReport overclass_check(std::span<const std::uint64_t> resolutions,
                                std::uint64_t actual_points) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (resolutions.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one resolution");
  OverclassReport report;
  report.resolutions.assign(resolutions.begin(), resolutions.end());
  std::uint64_t product = 1;
  for (std::uint64_t r : resolutions) {
    if (r == 0) throw Error(ErrorKind::InvalidArgument, "resolutions must be at least 1");
    if (product > kMax / r) {
      throw Error(ErrorKind::Overflow, "number of potential classes exceeds 64 bits");
    }
    product *= r;
  }
  if (product > kMax / kPointsPerPotentialClass) {
    throw Error(ErrorKind::Overflow, "minimum point count exceeds 64 bits");
  }
  report.potential_classes = product;
  report.min_points = kPointsPerPotentialClass * product;
  report.actual_points = actual_points;
  report.over_classified = actual_points < report.min_points;
  return report;
}

}  // namespace classif
