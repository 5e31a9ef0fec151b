#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace classif {

/// Dissimilarities available to the estimator. Serialized by lowercase name.
enum class MetricKind { L1, L2, Chebyshev, Hamming, Canberra, BrayCurtis };

inline constexpr std::array<MetricKind, 6> kAllMetrics = {
    MetricKind::L1,      MetricKind::L2,       MetricKind::Chebyshev,
    MetricKind::Hamming, MetricKind::Canberra, MetricKind::BrayCurtis,
};

std::string_view to_string(MetricKind metric) noexcept;
std::optional<MetricKind> parse_metric(std::string_view name) noexcept;

/// True for metrics the kd-tree can bound per coordinate (L1, L2, Chebyshev).
bool is_coordinate_separable(MetricKind metric) noexcept;

/// Distance between two equal-length vectors. Throws DimensionMismatch.
///
/// Canberra skips coordinates where both entries are zero. Bray-Curtis divides
/// by sum |a_i + b_i| and returns 0 when that sum is zero. Hamming counts
/// coordinates that differ under exact floating-point comparison, so it only
/// makes sense for ordinal-encoded categorical columns.
double distance(MetricKind metric, std::span<const double> a, std::span<const double> b);

namespace detail {

// Unchecked kernels; callers guarantee a.size() == b.size().
double l1(const double* a, const double* b, std::size_t d) noexcept;
double l2(const double* a, const double* b, std::size_t d) noexcept;
double chebyshev(const double* a, const double* b, std::size_t d) noexcept;
double hamming(const double* a, const double* b, std::size_t d) noexcept;
double canberra(const double* a, const double* b, std::size_t d) noexcept;
double bray_curtis(const double* a, const double* b, std::size_t d) noexcept;

double unchecked_distance(MetricKind metric, const double* a, const double* b,
                          std::size_t d) noexcept;

}  // namespace detail

}  // namespace classif
