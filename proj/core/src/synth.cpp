#include "classif/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "classif/random.hpp"

namespace classif::synth {
namespace {

void require_points(std::size_t n, std::size_t classes) {
  if (n < 2 || n < classes) {
    throw Error(ErrorKind::InvalidArgument, "need at least " +
                                                std::to_string(std::max<std::size_t>(2, classes)) +
                                                " points, got " + std::to_string(n));
  }
}

void require_noise(double noise) {
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw Error(ErrorKind::InvalidArgument, "noise must be a finite non-negative number");
  }
}

/// Points per group when n is split as evenly as possible, earlier groups first.
std::vector<std::size_t> split_evenly(std::size_t n, std::size_t groups) {
  std::vector<std::size_t> out(groups, n / groups);
  for (std::size_t g = 0; g < n % groups; ++g) ++out[g];
  return out;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::Circles: return "circles";
    case Kind::Moons: return "moons";
    case Kind::Blobs: return "blobs";
    case Kind::Linear1D: return "linear1d";
    case Kind::OverlapUniform1D: return "overlap1d";
    case Kind::MadelonLike: return "madelon";
  }
  return "unknown";
}

Kind parse_kind(const std::string& name) {
  for (Kind k : {Kind::Circles, Kind::Moons, Kind::Blobs, Kind::Linear1D, Kind::OverlapUniform1D,
                 Kind::MadelonLike}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator kind '" + name + "'");
}

LabeledDataset gen_circles(std::size_t n, double noise, double radius_ratio, std::uint64_t seed) {
  require_points(n, 2);
  require_noise(noise);
  if (!(radius_ratio > 0.0 && radius_ratio < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "radius_ratio must lie in (0, 1)");
  }
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto counts = split_evenly(n, 2);
  Matrix x(n, 2);
  std::vector<ClassId> labels(n);
  std::size_t row = 0;
  for (ClassId cls = 0; cls < 2; ++cls) {
    const double radius = cls == 0 ? 1.0 : radius_ratio;
    for (std::size_t i = 0; i < counts[cls]; ++i, ++row) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(counts[cls]);
      x(row, 0) = radius * std::cos(angle) + noise * gauss(rng);
      x(row, 1) = radius * std::sin(angle) + noise * gauss(rng);
      labels[row] = cls;
    }
  }
  return validate_dataset(std::move(x), std::move(labels), ClassTable::numbered(2));
}

LabeledDataset gen_moons(std::size_t n, double noise, std::uint64_t seed) {
  require_points(n, 2);
  require_noise(noise);
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto counts = split_evenly(n, 2);
  Matrix x(n, 2);
  std::vector<ClassId> labels(n);
  std::size_t row = 0;
  for (ClassId cls = 0; cls < 2; ++cls) {
    const std::size_t m = counts[cls];
    for (std::size_t i = 0; i < m; ++i, ++row) {
      const double t =
          m > 1 ? std::numbers::pi * static_cast<double>(i) / static_cast<double>(m - 1) : 0.0;
      if (cls == 0) {
        x(row, 0) = std::cos(t);
        x(row, 1) = std::sin(t);
      } else {
        x(row, 0) = 1.0 - std::cos(t);
        x(row, 1) = 0.5 - std::sin(t);
      }
      x(row, 0) += noise * gauss(rng);
      x(row, 1) += noise * gauss(rng);
      labels[row] = cls;
    }
  }
  return validate_dataset(std::move(x), std::move(labels), ClassTable::numbered(2));
}

LabeledDataset gen_blobs(std::size_t n, const std::vector<std::vector<double>>& centers,
                         double noise, std::uint64_t seed) {
  if (centers.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two centers");
  const std::size_t d = centers.front().size();
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "centers must have at least one coordinate");
  for (const auto& c : centers) {
    if (c.size() != d) throw Error(ErrorKind::DimensionMismatch, "centers differ in dimension");
  }
  require_points(n, centers.size());
  require_noise(noise);

  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto counts = split_evenly(n, centers.size());
  Matrix x(n, d);
  std::vector<ClassId> labels(n);
  std::size_t row = 0;
  for (std::size_t cls = 0; cls < centers.size(); ++cls) {
    for (std::size_t i = 0; i < counts[cls]; ++i, ++row) {
      for (std::size_t j = 0; j < d; ++j) x(row, j) = centers[cls][j] + noise * gauss(rng);
      labels[row] = static_cast<ClassId>(cls);
    }
  }
  return validate_dataset(std::move(x), std::move(labels), ClassTable::numbered(centers.size()));
}

LabeledDataset gen_linear_1d(std::size_t n, std::uint64_t seed) {
  require_points(n, 2);
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto counts = split_evenly(n, 2);
  Matrix x(n, 1);
  std::vector<ClassId> labels(n);
  std::size_t row = 0;
  for (ClassId cls = 0; cls < 2; ++cls) {
    for (std::size_t i = 0; i < counts[cls]; ++i, ++row) {
      // inverse CDFs of 2x and 2(1 - x)
      const double s = std::sqrt(unit(rng));
      x(row, 0) = cls == 0 ? s : 1.0 - s;
      labels[row] = cls;
    }
  }
  return validate_dataset(std::move(x), std::move(labels), ClassTable::numbered(2));
}

LabeledDataset gen_overlap_uniform_1d(std::size_t n, double offset, std::uint64_t seed) {
  require_points(n, 2);
  if (!(offset >= 0.0) || !std::isfinite(offset)) {
    throw Error(ErrorKind::InvalidArgument, "offset must be a finite non-negative number");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto counts = split_evenly(n, 2);
  Matrix x(n, 1);
  std::vector<ClassId> labels(n);
  std::size_t row = 0;
  for (ClassId cls = 0; cls < 2; ++cls) {
    for (std::size_t i = 0; i < counts[cls]; ++i, ++row) {
      x(row, 0) = (cls == 0 ? 0.0 : offset) + unit(rng);
      labels[row] = cls;
    }
  }
  return validate_dataset(std::move(x), std::move(labels), ClassTable::numbered(2));
}

LabeledDataset gen_madelon_like(std::size_t n, const MadelonParams& p, std::uint64_t seed) {
  if (p.n_classes < 2) throw Error(ErrorKind::InvalidArgument, "need at least two classes");
  if (p.clusters_per_class < 1 || p.n_informative < 1) {
    throw Error(ErrorKind::InvalidArgument, "need clusters_per_class >= 1 and n_informative >= 1");
  }
  if (p.n_features < p.n_informative + p.n_redundant) {
    throw Error(ErrorKind::InvalidArgument,
                "n_features must cover informative and redundant features");
  }
  if (!(p.flip_fraction >= 0.0 && p.flip_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "flip fraction must lie in [0, 1]");
  }
  if (!(p.class_sep >= 0.0) || !std::isfinite(p.class_sep)) {
    throw Error(ErrorKind::InvalidArgument, "class_sep must be a finite non-negative number");
  }
  const std::size_t clusters = p.n_classes * p.clusters_per_class;
  if (p.n_informative < 64 && clusters > (std::uint64_t{1} << p.n_informative)) {
    throw Error(ErrorKind::TooManyClusters,
                std::to_string(clusters) + " clusters need more than the " +
                    std::to_string(std::uint64_t{1} << p.n_informative) + " hypercube vertices of " +
                    std::to_string(p.n_informative) + " informative features");
  }
  require_points(n, clusters);

  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const std::size_t inf = p.n_informative;

  // distinct vertices as sign patterns
  std::vector<std::vector<bool>> vertices;
  if (inf <= 20) {
    std::vector<std::uint32_t> ids(std::size_t{1} << inf);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t c = 0; c < clusters; ++c) {
      std::vector<bool> bits(inf);
      for (std::size_t j = 0; j < inf; ++j) bits[j] = (ids[c] >> j) & 1u;
      vertices.push_back(std::move(bits));
    }
  } else {
    std::set<std::vector<bool>> seen;
    std::bernoulli_distribution coin(0.5);
    while (vertices.size() < clusters) {
      std::vector<bool> bits(inf);
      for (std::size_t j = 0; j < inf; ++j) bits[j] = coin(rng);
      if (seen.insert(bits).second) vertices.push_back(std::move(bits));
    }
  }

  Matrix x(n, p.n_features);
  std::vector<ClassId> labels(n);
  const auto counts = split_evenly(n, clusters);
  std::size_t row = 0;
  for (std::size_t c = 0; c < clusters; ++c) {
    for (std::size_t i = 0; i < counts[c]; ++i, ++row) {
      for (std::size_t j = 0; j < inf; ++j) {
        x(row, j) = (vertices[c][j] ? p.class_sep : -p.class_sep) + gauss(rng);
      }
      labels[row] = static_cast<ClassId>(c % p.n_classes);
    }
  }

  std::vector<double> mixing(inf * p.n_redundant);
  for (double& b : mixing) b = coef(rng);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < p.n_redundant; ++r) {
      double v = 0.0;
      for (std::size_t j = 0; j < inf; ++j) v += x(i, j) * mixing[j * p.n_redundant + r];
      x(i, inf + r) = v;
    }
    for (std::size_t j = inf + p.n_redundant; j < p.n_features; ++j) x(i, j) = gauss(rng);
  }

  const auto flips =
      static_cast<std::size_t>(std::llround(p.flip_fraction * static_cast<double>(n)));
  if (flips > 0) {
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::shuffle(rows.begin(), rows.end(), rng);
    std::uniform_int_distribution<std::size_t> any_class(0, p.n_classes - 1);
    for (std::size_t f = 0; f < flips; ++f) labels[rows[f]] = static_cast<ClassId>(any_class(rng));
  }
  return validate_dataset(std::move(x), std::move(labels), ClassTable::numbered(p.n_classes));
}

LabeledDataset generate(const SynthSpec& spec) {
  switch (spec.kind) {
    case Kind::Circles: return gen_circles(spec.n, spec.noise, spec.radius_ratio, spec.seed);
    case Kind::Moons: return gen_moons(spec.n, spec.noise, spec.seed);
    case Kind::Blobs: return gen_blobs(spec.n, spec.centers, spec.noise, spec.seed);
    case Kind::Linear1D: return gen_linear_1d(spec.n, spec.seed);
    case Kind::OverlapUniform1D: return gen_overlap_uniform_1d(spec.n, spec.offset, spec.seed);
    case Kind::MadelonLike: return gen_madelon_like(spec.n, spec.madelon, spec.seed);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator kind");
}

}  // namespace classif::synth
