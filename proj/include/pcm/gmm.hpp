#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "pcm/core.hpp"

namespace pcm {

enum class Method { GMM, EM, GMM_TRANSPOSED };

constexpr const char* to_string(Method m) {
  switch (m) {
    case Method::GMM: return "gmm";
    case Method::EM: return "em";
    case Method::GMM_TRANSPOSED: return "gmm_transposed";
  }
  return "unknown";
}

/// Priorities with per-element errors.
///
/// For the GMM paths omega = omega_star * ch(delta) and
/// domega = omega_star * sh(delta). The EM path leaves delta at zero and
/// sets omega_star equal to omega.
struct PriorityEstimate {
  Method method = Method::GMM;
  double c = 1.0;
  double lambda = 1.0;
  std::vector<double> omega_star;
  std::vector<double> delta;
  std::vector<double> omega;
  std::vector<double> domega;
  bool normalized = false;

  std::size_t size() const noexcept { return omega.size(); }

  friend bool operator==(const PriorityEstimate&, const PriorityEstimate&) = default;
};

namespace detail {

// Neumaier-compensated; large rows of large entries otherwise lose digits.
inline double mean_log(std::span<const double> xs) {
  double s = 0.0, comp = 0.0;
  for (double x : xs) {
    const double l = std::log(x), t = s + l;
    comp += std::abs(s) >= std::abs(l) ? (s - t) + l : (l - t) + s;
    s = t;
  }
  return (s + comp) / static_cast<double>(xs.size());
}

inline std::vector<double> row_mean_logs(const ComparisonMatrix& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mean_log(a.row(i));
  return out;
}

inline double ch(double x) { return (std::exp(x) + std::exp(-x)) / 2.0; }
inline double sh(double x) { return (std::exp(x) - std::exp(-x)) / 2.0; }

}  // namespace detail

/// omega*_i = c * (prod_k a_ik)^(1/n), evaluated as exp of the mean log.
inline std::vector<double> row_geometric_means(const ComparisonMatrix& a, double c = 1.0) {
  auto logs = detail::row_mean_logs(a);
  for (auto& l : logs) l = c * std::exp(l);
  return logs;
}

/// (prod_{i,r} a_ir)^(1/n^2). Identically 1 for reciprocal matrices.
inline double matrix_lambda(const ComparisonMatrix& a) {
  return std::exp(detail::mean_log(a.entries()));
}

/// Logarithmic error exponents
///   delta_i = sqrt( 1/(n-1) * sum_k ln^2( a_ik * omega*_k / (lambda * omega*_i) ) ).
/// The k = i term is included. The scale constant cancels, so none is taken.
inline std::vector<double> gmm_error_exponents(const ComparisonMatrix& a) {
  const std::size_t n = a.size();
  const auto log_star = detail::row_mean_logs(a);
  const double log_lambda = detail::mean_log(a.entries());
  std::vector<double> delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = std::log(a(i, k)) - log_lambda + log_star[k] - log_star[i];
      s += t * t;
    }
    delta[i] = std::sqrt(s / static_cast<double>(n - 1));
  }
  return delta;
}

inline std::vector<double> gmm_error_exponents(const ComparisonMatrix& a, double /*c*/) {
  return gmm_error_exponents(a);
}

/// Unnormalized GMM estimate with error bars.
inline PriorityEstimate gmm_estimate(const ComparisonMatrix& a, double c = 1.0) {
  PriorityEstimate e;
  e.method = Method::GMM;
  e.c = c;
  e.lambda = matrix_lambda(a);
  e.omega_star = row_geometric_means(a, c);
  e.delta = gmm_error_exponents(a);
  const std::size_t n = a.size();
  e.omega.resize(n);
  e.domega.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.omega[i] = e.omega_star[i] * detail::ch(e.delta[i]);
    e.domega[i] = e.omega_star[i] * detail::sh(e.delta[i]);
  }
  return e;
}

/// Scales omega, domega and omega_star by 1 / sum(omega). No-op on
/// estimates already flagged normalized.
inline PriorityEstimate normalize(PriorityEstimate e) {
  if (e.normalized) return e;
  const double s = std::accumulate(e.omega.begin(), e.omega.end(), 0.0);
  for (auto& x : e.omega) x /= s;
  for (auto& x : e.domega) x /= s;
  for (auto& x : e.omega_star) x /= s;
  e.normalized = true;
  return e;
}

}  // namespace pcm
