#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pcm/core.hpp"
#include "pcm/gmm.hpp"
#include "pcm/measurement.hpp"

namespace pcm {

inline constexpr double kRoundTripTolerance = 1e-10;
inline constexpr double kLambdaTolerance = 1e-12;

/// Worst-case discrepancies of the matrix <-> measurement correspondence for
/// one matrix. All errors are relative except delta_error (absolute, the
/// exponents are dimensionless and may be zero).
struct RoundTripReport {
  double matrix_error = 0.0;   // A -> samples -> A
  double samples_error = 0.0;  // samples -> A -> samples
  double lambda_error = 0.0;   // lambda of the construction vs product form
  double delta_error = 0.0;    // matrix-route exponents vs log-deviation of samples

  bool passed() const {
    return matrix_error <= kRoundTripTolerance && samples_error <= kRoundTripTolerance &&
           lambda_error <= kLambdaTolerance && delta_error <= kRoundTripTolerance;
  }
};

namespace detail {

inline double max_relative_error(const Grid& a, const Grid& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k)
      worst = std::max(worst, std::abs(a[i][k] - b[i][k]) / std::abs(b[i][k]));
  return worst;
}

}  // namespace detail

inline RoundTripReport roundtrip_check(const ComparisonMatrix& a, double c = 1.0) {
  RoundTripReport r;
  const auto samples = measurements_from_matrix(a, c);
  const auto back = matrix_from_measurements(samples, c);
  r.matrix_error = detail::max_relative_error(back.matrix.to_grid(), a.to_grid());

  const auto again = measurements_from_matrix(back.matrix, c);
  r.samples_error = detail::max_relative_error(again.grid(), samples.grid());
  r.lambda_error = std::abs(back.lambda - matrix_lambda(back.matrix)) / back.lambda;

  const auto delta = gmm_error_exponents(back.matrix);
  for (std::size_t i = 0; i < samples.size(); ++i)
    r.delta_error = std::max(r.delta_error, std::abs(delta[i] - geometric_summary(samples.element(i)).log_deviation));
  return r;
}

}  // namespace pcm
