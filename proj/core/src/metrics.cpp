#include "classif/metrics.hpp"

#include <cmath>
#include <string>

#include "classif/core.hpp"

namespace classif {

std::string_view to_string(MetricKind metric) noexcept {
  switch (metric) {
    case MetricKind::L1: return "l1";
    case MetricKind::L2: return "l2";
    case MetricKind::Chebyshev: return "chebyshev";
    case MetricKind::Hamming: return "hamming";
    case MetricKind::Canberra: return "canberra";
    case MetricKind::BrayCurtis: return "braycurtis";
  }
  return "unknown";
}

std::optional<MetricKind> parse_metric(std::string_view name) noexcept {
  for (MetricKind m : kAllMetrics) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

bool is_coordinate_separable(MetricKind metric) noexcept {
  return metric == MetricKind::L1 || metric == MetricKind::L2 || metric == MetricKind::Chebyshev;
}

namespace detail {

double l1(const double* a, const double* b, std::size_t d) noexcept {
  double out = 0.0;
  for (std::size_t i = 0; i < d; ++i) out += std::abs(a[i] - b[i]);
  return out;
}

double l2(const double* a, const double* b, std::size_t d) noexcept {
  double out = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    out += diff * diff;
  }
  return std::sqrt(out);
}

double chebyshev(const double* a, const double* b, std::size_t d) noexcept {
  double out = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = std::abs(a[i] - b[i]);
    if (diff > out) out = diff;
  }
  return out;
}

double hamming(const double* a, const double* b, std::size_t d) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < d; ++i) count += (a[i] != b[i]) ? 1 : 0;
  return static_cast<double>(count);
}

double canberra(const double* a, const double* b, std::size_t d) noexcept {
  double out = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double denom = std::abs(a[i]) + std::abs(b[i]);
    if (denom > 0.0) out += std::abs(a[i] - b[i]) / denom;
  }
  return out;
}

double bray_curtis(const double* a, const double* b, std::size_t d) noexcept {
  double num = 0.0;
  double denom = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    num += std::abs(a[i] - b[i]);
    denom += std::abs(a[i] + b[i]);
  }
  return denom > 0.0 ? num / denom : 0.0;
}

double unchecked_distance(MetricKind metric, const double* a, const double* b,
                          std::size_t d) noexcept {
  switch (metric) {
    case MetricKind::L1: return l1(a, b, d);
    case MetricKind::L2: return l2(a, b, d);
    case MetricKind::Chebyshev: return chebyshev(a, b, d);
    case MetricKind::Hamming: return hamming(a, b, d);
    case MetricKind::Canberra: return canberra(a, b, d);
    case MetricKind::BrayCurtis: return bray_curtis(a, b, d);
  }
  return 0.0;
}

}  // namespace detail

double distance(MetricKind metric, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorKind::DimensionMismatch,
                "distance: vectors of size " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  return detail::unchecked_distance(metric, a.data(), b.data(), a.size());
}

}  // namespace classif
