#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "classif/metrics.hpp"

namespace classif {

/// Failure categories surfaced by the library. The CLI maps every one of
/// these to a "data error" exit code.
enum class ErrorKind {
  NonFiniteFeature,
  LabelOutOfRange,
  EmptyClass,
  EmptyDataset,
  DimensionMismatch,
  InvalidArgument,
  IndexOutOfRange,
  KTooLarge,
  DatasetTooSmall,
  EmptyNeighborhood,
  SubsampleTooSmall,
  DegenerateProblem,
  DegenerateSplit,
  TooManyClusters,
  Overflow,
  ParseError,
  MissingColumn,
  EmptyFile,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

using ClassId = std::uint32_t;

/// Ordered, unique, non-empty class names. Class identifiers are positions
/// in this table.
class ClassTable {
 public:
  ClassTable() = default;
  explicit ClassTable(std::vector<std::string> names);

  /// Table with names "0", "1", ..., "count-1".
  static ClassTable numbered(std::size_t count);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(ClassId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const ClassTable&, const ClassTable&) = default;

 private:
  std::vector<std::string> names_;
};

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}
  Matrix(std::size_t r, std::size_t c, std::vector<double> v);

  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
  std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
};

/// n points with d finite features each, plus a dense class label per point.
/// Immutable once built; obtain one through validate_dataset().
class LabeledDataset {
 public:
  std::size_t size() const noexcept { return features_.rows; }
  std::size_t dims() const noexcept { return features_.cols; }
  std::size_t num_classes() const noexcept { return classes_.size(); }

  std::span<const double> row(std::size_t i) const { return features_.row(i); }
  ClassId label(std::size_t i) const { return labels_[i]; }

  const Matrix& features() const noexcept { return features_; }
  const std::vector<ClassId>& labels() const noexcept { return labels_; }
  const ClassTable& classes() const noexcept { return classes_; }

  /// Rows picked by `indices` (in the given order), same class table.
  /// Throws EmptyClass if some class ends up unrepresented.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

 private:
  friend LabeledDataset validate_dataset(Matrix, std::vector<ClassId>, ClassTable);

  Matrix features_;
  std::vector<ClassId> labels_;
  ClassTable classes_;
};

LabeledDataset validate_dataset(Matrix features, std::vector<ClassId> labels, ClassTable classes);

/// Per-class counts divided by n.
std::vector<double> class_proportions(const LabeledDataset& dataset);

struct Radius {
  double theta = 0.0;
};

struct KNearest {
  std::size_t k = 0;
};

struct NeighborhoodSpec {
  std::variant<Radius, KNearest> mode;
  MetricKind metric = MetricKind::L2;

  static NeighborhoodSpec radius(double theta, MetricKind metric = MetricKind::L2);
  static NeighborhoodSpec nearest(std::size_t k, MetricKind metric = MetricKind::L2);

  bool is_radius() const noexcept { return std::holds_alternative<Radius>(mode); }
  double theta() const { return std::get<Radius>(mode).theta; }
  std::size_t k() const { return std::get<KNearest>(mode).k; }

  /// Checks the mode parameters against a dataset of n points.
  void check(std::size_t n) const;
};

/// Local class proportions. support_size == 0 marks an empty neighborhood;
/// probs is then all-zero.
struct ClassProbabilities {
  std::vector<double> probs;
  std::size_t support_size = 0;

  bool empty() const noexcept { return support_size == 0; }
};

struct EstimateReport {
  double limit = 1.0;
  std::vector<double> per_point_entropy;
  std::vector<std::size_t> neighborhood_size;
  std::vector<double> class_proportions;
  std::size_t empty_neighborhood_count = 0;
  NeighborhoodSpec config;
  std::size_t n = 0;
  std::size_t d = 0;
};

}  // namespace classif
