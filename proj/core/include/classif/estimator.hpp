#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "classif/core.hpp"
#include "classif/neighbors.hpp"

namespace classif {

/// Local invariant measure under the constant-distribution approximation:
/// values[a] = p[a] * exp(1 - max_b p[b]).
struct RhoHat {
  std::vector<double> values;
};

struct EstimateOptions {
  /// Skip the kd-tree and scan every row.
  bool brute_force = false;
  /// Also evaluate the full -sum p ln(p / rho) entropy for every point and
  /// throw if it disagrees with 1 - max p by more than 1e-12.
  bool verify_entropy = false;
  /// Worker threads; 0 picks hardware concurrency (capped by
  /// CLASSIFIABILITY_THREADS).
  std::size_t workers = 1;
};

ClassProbabilities local_probabilities(const LabeledDataset& dataset,
                                       const NeighborList& neighborhood);

/// Throws EmptyNeighborhood on the empty sentinel.
RhoHat rho_hat(const ClassProbabilities& probs);

/// Production form, 1 - max p. The empty sentinel yields 0.
double local_entropy(const ClassProbabilities& probs) noexcept;

/// -sum_a p_a ln(p_a / rho_a) with 0 ln 0 = 0. The empty sentinel yields 0.
double local_entropy_full(const ClassProbabilities& probs);

/// Classifiability limit: 1 minus the mean local entropy over all points.
EstimateReport classifiability(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                               const EstimateOptions& options = {});

struct EntropyRecord {
  std::size_t index = 0;
  ClassId label = 0;
  double entropy = 0.0;
  std::size_t neighborhood_size = 0;
  std::vector<double> coordinates;
};

/// One record per point, entropies identical to classifiability().
std::vector<EntropyRecord> entropy_map(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                                       const EstimateOptions& options = {});
std::vector<EntropyRecord> entropy_map(const LabeledDataset& dataset,
                                       const EstimateReport& report);

/// Per-class sample counts for a stratified subsample of `size` rows: largest
/// remainder apportionment of the class counts, then every class topped up to
/// at least one row. Throws SubsampleTooSmall when size < number of classes.
std::vector<std::size_t> stratified_counts(std::span<const std::size_t> class_counts,
                                           std::size_t size);

/// Row indices (ascending) of a stratified subsample without replacement.
std::vector<std::size_t> stratified_subsample(const LabeledDataset& dataset, std::size_t size,
                                              std::uint64_t seed);

struct JackknifeReport {
  std::vector<double> subsample_limits;
  double max_limit = 0.0;
  double mean_limit = 0.0;
  double std_limit = 0.0;  // population standard deviation
  std::size_t rounds = 0;
  double fraction = 0.0;
  std::size_t subsample_size = 0;
};

JackknifeReport jackknife(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                          double fraction = 0.8, std::size_t rounds = 10, std::uint64_t seed = 0,
                          const EstimateOptions& options = {});

struct SweepPoint {
  double proportion = 0.0;
  std::size_t subsample_size = 0;
  double mean_limit = 0.0;
  double std_limit = 0.0;
  std::vector<double> limits;
};

std::vector<SweepPoint> subsample_sweep(const LabeledDataset& dataset,
                                        const NeighborhoodSpec& spec,
                                        std::span<const double> proportions, std::size_t repeats,
                                        std::uint64_t seed, const EstimateOptions& options = {});

/// Potential classes N = prod r_d against the P >= 20 N data-size rule.
struct OverclassReport {
  std::uint64_t potential_classes = 1;
  std::vector<std::uint64_t> resolutions;
  std::uint64_t min_points = 20;
  std::uint64_t actual_points = 0;
  bool over_classified = false;
};

inline constexpr std::uint64_t kPointsPerPotentialClass = 20;

/// Throws Overflow if 20 * N does not fit in 64 bits.
OverclassReport overclass_check(std::span<const std::uint64_t> resolutions,
                                std::uint64_t actual_points);

/// Mean and population standard deviation.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd mean_std(std::span<const double> values) noexcept;

}  // namespace classif
