#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "classif/core.hpp"

namespace classif::synth {

enum class Kind { Circles, Moons, Blobs, Linear1D, OverlapUniform1D, MadelonLike };

std::string to_string(Kind kind);
Kind parse_kind(const std::string& name);

struct MadelonParams {
  std::size_t n_features = 20;
  std::size_t n_informative = 4;
  std::size_t n_redundant = 2;
  std::size_t n_classes = 2;
  std::size_t clusters_per_class = 1;
  double class_sep = 1.0;
  double flip_fraction = 0.0;
};

/// Everything a generator needs; fields a kind does not use are ignored.
struct SynthSpec {
  Kind kind = Kind::Circles;
  std::size_t n = 500;
  double noise = 0.0;
  std::uint64_t seed = 0;
  double radius_ratio = 0.5;                 // Circles
  std::vector<std::vector<double>> centers;  // Blobs
  double offset = 0.5;                       // OverlapUniform1D
  MadelonParams madelon;                     // MadelonLike
};

/// Outer circle (class 0, radius 1) and inner circle (class 1, radius_ratio),
/// evenly spaced angles, isotropic Gaussian noise on each coordinate.
LabeledDataset gen_circles(std::size_t n, double noise, double radius_ratio, std::uint64_t seed);

/// Upper half circle (class 0) and the lower half circle shifted by (1, 0.5)
/// (class 1), plus Gaussian noise.
LabeledDataset gen_moons(std::size_t n, double noise, std::uint64_t seed);

/// Equal-count isotropic Gaussian clusters, one class per center.
LabeledDataset gen_blobs(std::size_t n, const std::vector<std::vector<double>>& centers,
                         double noise, std::uint64_t seed);

/// Densities 2x (class 0) and 2(1 - x) (class 1) on [0, 1], n/2 points each.
LabeledDataset gen_linear_1d(std::size_t n, std::uint64_t seed);

/// U[0, 1] (class 0) against U[offset, 1 + offset] (class 1), n/2 points each.
/// Bayes accuracy is 1 - max(0, 1 - offset) / 2.
LabeledDataset gen_overlap_uniform_1d(std::size_t n, double offset, std::uint64_t seed);

/// Madelon-style problem: Gaussian clusters on distinct hypercube vertices
/// (side 2 * class_sep) in the informative subspace, redundant features as
/// random linear combinations of informative ones, pure-noise filler
/// features, and round(q * n) labels redrawn uniformly over all classes.
///
/// Feature columns are ordered informative, redundant, noise. Clusters are
/// assigned to classes round-robin. Throws TooManyClusters when the
/// informative subspace has fewer vertices than clusters.
LabeledDataset gen_madelon_like(std::size_t n, const MadelonParams& params, std::uint64_t seed);

/// Dispatches on spec.kind.
LabeledDataset generate(const SynthSpec& spec);

}  // namespace classif::synth
