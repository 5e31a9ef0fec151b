#include "classif/core.hpp"

#include <cmath>
#include <set>

namespace classif {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::DatasetTooSmall: return "DatasetTooSmall";
    case ErrorKind::EmptyNeighborhood: return "EmptyNeighborhood";
    case ErrorKind::SubsampleTooSmall: return "SubsampleTooSmall";
    case ErrorKind::DegenerateProblem: return "DegenerateProblem";
    case ErrorKind::DegenerateSplit: return "DegenerateSplit";
    case ErrorKind::TooManyClusters: return "TooManyClusters";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ClassTable::ClassTable(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw Error(ErrorKind::InvalidArgument, "class names must be non-empty");
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate class name '" + name + "'");
    }
  }
}

ClassTable ClassTable::numbered(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back(std::to_string(i));
  return ClassTable(std::move(names));
}

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<double> v)
    : rows(r), cols(c), values(std::move(v)) {
  if (values.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix storage holds " + std::to_string(values.size()) + " values, expected " +
                    std::to_string(rows * cols));
  }
}

LabeledDataset validate_dataset(Matrix features, std::vector<ClassId> labels, ClassTable classes) {
  if (features.rows == 0 || features.cols == 0) {
    throw Error(ErrorKind::EmptyDataset, "dataset needs at least one row and one feature");
  }
  if (features.values.size() != features.rows * features.cols) {
    throw Error(ErrorKind::DimensionMismatch, "matrix storage does not match its shape");
  }
  if (labels.size() != features.rows) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(labels.size()) + " labels for " + std::to_string(features.rows) +
                    " rows");
  }
  for (std::size_t i = 0; i < features.rows; ++i) {
    for (std::size_t j = 0; j < features.cols; ++j) {
      if (!std::isfinite(features(i, j))) {
        throw Error(ErrorKind::NonFiniteFeature,
                    "row " + std::to_string(i) + ", column " + std::to_string(j));
      }
    }
  }
  std::vector<std::size_t> counts(classes.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= classes.size()) {
      throw Error(ErrorKind::LabelOutOfRange, "row " + std::to_string(i) + " has label " +
                                                  std::to_string(labels[i]) + " but only " +
                                                  std::to_string(classes.size()) + " classes");
    }
    ++counts[labels[i]];
  }
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) {
      throw Error(ErrorKind::EmptyClass, "class '" + classes.name(static_cast<ClassId>(c)) +
                                             "' has no samples");
    }
  }

  LabeledDataset out;
  out.features_ = std::move(features);
  out.labels_ = std::move(labels);
  out.classes_ = std::move(classes);
  return out;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  Matrix m(indices.size(), dims());
  std::vector<ClassId> labels;
  labels.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::size_t src = indices[r];
    if (src >= size()) {
      throw Error(ErrorKind::IndexOutOfRange, "subset row " + std::to_string(src));
    }
    const auto from = row(src);
    std::copy(from.begin(), from.end(), m.row(r).begin());
    labels.push_back(labels_[src]);
  }
  return validate_dataset(std::move(m), std::move(labels), classes_);
}

std::vector<double> class_proportions(const LabeledDataset& dataset) {
  std::vector<std::size_t> counts(dataset.num_classes(), 0);
  for (ClassId label : dataset.labels()) ++counts[label];
  std::vector<double> out(counts.size());
  const double n = static_cast<double>(dataset.size());
  for (std::size_t c = 0; c < counts.size(); ++c) out[c] = static_cast<double>(counts[c]) / n;
  return out;
}

NeighborhoodSpec NeighborhoodSpec::radius(double theta, MetricKind metric) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw Error(ErrorKind::InvalidArgument, "radius must be a positive finite number");
  }
  return NeighborhoodSpec{Radius{theta}, metric};
}

NeighborhoodSpec NeighborhoodSpec::nearest(std::size_t k, MetricKind metric) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  return NeighborhoodSpec{KNearest{k}, metric};
}

void NeighborhoodSpec::check(std::size_t n) const {
  if (is_radius()) {
    if (!(theta() > 0.0) || !std::isfinite(theta())) {
      throw Error(ErrorKind::InvalidArgument, "radius must be a positive finite number");
    }
    return;
  }
  if (k() == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (n < 2 || k() > n - 1) {
    throw Error(ErrorKind::KTooLarge,
                "k = " + std::to_string(k()) + " needs at least k+1 points, dataset has " +
                    std::to_string(n));
  }
}

}  // namespace classif
