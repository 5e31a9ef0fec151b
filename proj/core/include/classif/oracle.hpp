#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "classif/core.hpp"

namespace classif {

inline constexpr std::size_t kDefaultCells1D = 4096;
inline constexpr std::size_t kDefaultCells2D = 512;

/// One axis of a regular lattice: `cells` equal-width cells over [lower, upper].
struct Axis {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t cells = kDefaultCells1D;

  double width() const noexcept { return (upper - lower) / static_cast<double>(cells); }
  double center(std::size_t i) const noexcept {
    return lower + (static_cast<double>(i) + 0.5) * width();
  }
};

/// Class-conditional densities tabulated on a 1D or 2D lattice. Cell c of a
/// 2D grid sits at (c % cells_x, c / cells_x). Each density, times the cell
/// volume, sums to one.
struct AnalyticProblem {
  std::vector<Axis> axes;
  std::vector<double> class_weights;
  std::vector<std::vector<double>> densities;
  std::vector<std::string> class_names;

  std::size_t dims() const noexcept { return axes.size(); }
  std::size_t num_classes() const noexcept { return densities.size(); }
  std::size_t cell_count() const noexcept;
  double cell_volume() const noexcept;
  std::vector<double> cell_center(std::size_t cell) const;

  /// Throws InvalidArgument on malformed shapes and DegenerateProblem on
  /// all-zero or unnormalized densities.
  void validate() const;
};

namespace density {

struct Uniform {
  std::vector<double> lower;
  std::vector<double> upper;
};
/// Linear ramp along the first axis: rises towards `upper` when increasing.
struct Triangular {
  bool increasing = true;
};
struct Gaussian {
  std::vector<double> mean;
  double sigma = 1.0;
};
/// Gaussian profile around the sphere |x| = radius.
struct Ring {
  double radius = 1.0;
  double sigma = 0.1;
};
/// Explicit per-cell values, used as given.
struct Table {
  std::vector<double> values;
};

using Family = std::variant<Uniform, Triangular, Gaussian, Ring, Table>;

}  // namespace density

/// Tabulates the family on the grid. Named families are normalized to unit
/// mass; tables are copied unchanged.
std::vector<double> tabulate(const density::Family& family, const std::vector<Axis>& axes);

/// Builds and validates a problem. Empty weights mean equal weights.
AnalyticProblem make_problem(std::vector<Axis> axes, const std::vector<density::Family>& families,
                             std::vector<double> weights = {},
                             std::vector<std::string> names = {});

/// Built-in problems: "linear1d" (2x vs 2(1-x) on [0,1]), "identical-uniform",
/// "disjoint-uniform", "overlap-uniform1d" (U[0,1] vs U[offset, 1+offset]).
AnalyticProblem named_problem(const std::string& name, double offset = 0.5,
                              std::size_t cells = kDefaultCells1D);

/// Parses a problem definition:
///   {"bounds": [[lo, hi], ...], "cells": [n, ...], "weights": [...],
///    "classes": [{"name": ..., "family": "uniform|triangular-x|gaussian|ring|table", ...}]}
AnalyticProblem problem_from_json(const nlohmann::json& doc);

/// Midpoint-rule Bayes accuracy: sum over cells of volume * max_a w_a f_a.
double bayes_limit(const AnalyticProblem& problem);

/// Draws the class by weight, the cell by the class CDF, then a uniform
/// position inside the cell.
LabeledDataset sample_problem(const AnalyticProblem& problem, std::size_t n, std::uint64_t seed);

/// Straight-line O(n^2) estimator: no index, no threads, full entropy formula
/// checked against its closed form. When `max_identity_gap` is given it
/// receives the largest |full - (1 - max p)| seen.
EstimateReport reference_estimate(const LabeledDataset& dataset, const NeighborhoodSpec& spec,
                                  double* max_identity_gap = nullptr);

}  // namespace classif
