#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pcm/core.hpp"
#include "pcm/gmm.hpp"

namespace pcm {

/// Principal (Perron) eigenpair of a positive matrix.
struct EigenResult {
  double lambda_max = 0.0;
  std::vector<double> vector;  // sums to 1
  std::size_t iterations = 0;
  double residual = 0.0;       // max_i |(A w)_i - lambda_max w_i|
};

inline constexpr double kDefaultEigenTolerance = 1e-12;
inline constexpr std::size_t kDefaultEigenMaxIter = 10000;

namespace detail {

inline std::vector<double> multiply(const ComparisonMatrix& a, const std::vector<double>& w) {
  const std::size_t n = a.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    for (std::size_t k = 0; k < n; ++k) out[i] += row[k] * w[k];
  }
  return out;
}

inline double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace detail

/// Power iteration from the uniform vector, sum-normalized each step.
/// Stops once successive vectors differ by less than tol in max norm.
inline EigenResult principal_eigen(const ComparisonMatrix& a,
                                   double tol = kDefaultEigenTolerance,
                                   std::size_t max_iter = kDefaultEigenMaxIter) {
  const std::size_t n = a.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 1; it <= max_iter; ++it) {
    auto next = detail::multiply(a, w);
    const double s = detail::sum(next);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= s;
      diff = std::max(diff, std::abs(next[i] - w[i]));
    }
    w = std::move(next);
    if (diff < tol) {
      EigenResult r;
      const auto aw = detail::multiply(a, w);
      r.lambda_max = detail::sum(aw) / detail::sum(w);
      for (std::size_t i = 0; i < n; ++i)
        r.residual = std::max(r.residual, std::abs(aw[i] - r.lambda_max * w[i]));
      r.vector = std::move(w);
      r.iterations = it;
      return r;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "power iteration did not converge in " + std::to_string(max_iter) + " iterations");
}

/// Implied measurements w_i^(k) = (n / lambda_max) * a_ik * w_k. Their row
/// means reproduce the eigenvector.
inline Grid em_samples(const ComparisonMatrix& a, const EigenResult& r) {
  const std::size_t n = a.size();
  const double scale = static_cast<double>(n) / r.lambda_max;
  Grid samples(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) samples[i][k] = scale * a(i, k) * r.vector[k];
  return samples;
}

/// Standard deviation (1/(n-1)) of the implied measurements about w_i.
inline std::vector<double> em_errors(const ComparisonMatrix& a, const EigenResult& r) {
  const std::size_t n = a.size();
  const auto samples = em_samples(a, r);
  std::vector<double> err(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = samples[i][k] - r.vector[i];
      s += d * d;
    }
    err[i] = std::sqrt(s / static_cast<double>(n - 1));
  }
  return err;
}

inline PriorityEstimate em_estimate(const ComparisonMatrix& a,
                                    double tol = kDefaultEigenTolerance,
                                    std::size_t max_iter = kDefaultEigenMaxIter) {
  const auto r = principal_eigen(a, tol, max_iter);
  PriorityEstimate e;
  e.method = Method::EM;
  e.c = 1.0;
  e.lambda = r.lambda_max;
  e.omega = r.vector;
  e.omega_star = r.vector;
  e.delta.assign(a.size(), 0.0);
  e.domega = em_errors(a, r);
  e.normalized = true;
  return e;
}

}  // namespace pcm
