#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pcm/core.hpp"
#include "pcm/gmm.hpp"

namespace pcm {

/// samples[i][k] is the k-th measurement of element i; n elements, n
/// measurements each.
class MeasurementSet {
 public:
  explicit MeasurementSet(Grid samples) : samples_(std::move(samples)) {
    const std::size_t n = samples_.size();
    if (n < 2) throw Error(ErrorCode::TooSmall, "measurement set needs at least 2 elements");
    for (std::size_t i = 0; i < n; ++i) {
      if (samples_[i].size() != n) throw Error(ErrorCode::NonSquare, "measurement set must be n x n");
      for (std::size_t k = 0; k < n; ++k)
        if (!std::isfinite(samples_[i][k]) || samples_[i][k] <= 0.0) throw NonPositiveEntry(i, k);
    }
  }

  std::size_t size() const noexcept { return samples_.size(); }
  double operator()(std::size_t i, std::size_t k) const { return samples_[i][k]; }
  std::span<const double> element(std::size_t i) const { return samples_[i]; }
  const Grid& grid() const noexcept { return samples_; }

  /// Geometric mean of each element's measurements.
  std::vector<double> geometric_means() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = std::exp(detail::mean_log(element(i)));
    return out;
  }

 private:
  Grid samples_;
};

enum class SummaryKind { ARITHMETIC, GEOMETRIC };

struct SampleSummary {
  double mean = 0.0;
  double error = 0.0;
  SummaryKind kind = SummaryKind::ARITHMETIC;
  // Only meaningful for GEOMETRIC: the geometric mean and log-space deviation.
  double geometric_mean = 0.0;
  double log_deviation = 0.0;
};

namespace detail {

inline void require_samples(std::span<const double> samples) {
  if (samples.size() < 2) throw Error(ErrorCode::TooFewSamples, "need at least 2 samples");
}

}  // namespace detail

/// Arithmetic mean and sample standard deviation.
inline SampleSummary arithmetic_summary(std::span<const double> samples) {
  detail::require_samples(samples);
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  SampleSummary s;
  s.kind = SummaryKind::ARITHMETIC;
  s.mean = mean;
  s.error = std::sqrt(ss / (n - 1.0));
  return s;
}

/// Mean and standard deviation taken in log space, then mapped back to the
/// normal scale as g * ch(d) and g * sh(d).
inline SampleSummary geometric_summary(std::span<const double> samples) {
  detail::require_samples(samples);
  for (std::size_t k = 0; k < samples.size(); ++k)
    if (!std::isfinite(samples[k]) || samples[k] <= 0.0) throw NonPositiveEntry(0, k);
  const double n = static_cast<double>(samples.size());
  const double log_mean = detail::mean_log(samples);
  double ss = 0.0;
  for (double x : samples) {
    const double t = std::log(x) - log_mean;
    ss += t * t;
  }
  SampleSummary s;
  s.kind = SummaryKind::GEOMETRIC;
  s.geometric_mean = std::exp(log_mean);
  s.log_deviation = std::sqrt(ss / (n - 1.0));
  s.mean = s.geometric_mean * detail::ch(s.log_deviation);
  s.error = s.geometric_mean * detail::sh(s.log_deviation);
  return s;
}

inline SampleSummary arithmetic_summary(std::initializer_list<double> samples) {
  return arithmetic_summary(std::span<const double>(samples.begin(), samples.size()));
}

inline SampleSummary geometric_summary(std::initializer_list<double> samples) {
  return geometric_summary(std::span<const double>(samples.begin(), samples.size()));
}

struct MatrixWithLambda {
  ComparisonMatrix matrix;
  double lambda;
};

/// The unique positive matrix whose row geometric means (scaled by c) are
/// the measurement geometric means:
///   lambda = (1/c) (prod_k g_k)^(1/n),  a_ik = lambda * samples[i][k] / g_k.
inline MatrixWithLambda matrix_from_measurements(const MeasurementSet& m, double c = 1.0) {
  const std::size_t n = m.size();
  const auto g = m.geometric_means();
  const double lambda = std::exp(detail::mean_log(g)) / c;
  Grid grid(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) grid[i][k] = lambda * m(i, k) / g[k];
  return {validate_matrix(grid), lambda};
}

/// Inverse of matrix_from_measurements:
///   samples[i][k] = (c / lambda) * a_ik * (prod_r a_kr)^(1/n).
inline MeasurementSet measurements_from_matrix(const ComparisonMatrix& a, double c = 1.0) {
  const std::size_t n = a.size();
  const double lambda = matrix_lambda(a);
  const auto row_gm = row_geometric_means(a, 1.0);
  Grid samples(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) samples[i][k] = (c / lambda) * a(i, k) * row_gm[k];
  return MeasurementSet(std::move(samples));
}

}  // namespace pcm
