#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "pcm/core.hpp"
#include "pcm/em.hpp"
#include "pcm/gmm.hpp"

namespace pcm {

enum class Verdict { RELIABLE_GT, RELIABLE_LT, INDISTINGUISHABLE };

constexpr const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::RELIABLE_GT: return "reliable_gt";
    case Verdict::RELIABLE_LT: return "reliable_lt";
    case Verdict::INDISTINGUISHABLE: return "indistinguishable";
  }
  return "unknown";
}

constexpr Verdict flip(Verdict v) {
  switch (v) {
    case Verdict::RELIABLE_GT: return Verdict::RELIABLE_LT;
    case Verdict::RELIABLE_LT: return Verdict::RELIABLE_GT;
    default: return v;
  }
}

/// Verdict of `first` relative to `second`, first < second.
struct PairVerdict {
  std::size_t first = 0;
  std::size_t second = 0;
  Verdict verdict = Verdict::INDISTINGUISHABLE;

  friend bool operator==(const PairVerdict&, const PairVerdict&) = default;
};

struct IndexPair {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

inline constexpr double kDefaultSigma = 1.0;

struct RankingReport {
  double sigma = kDefaultSigma;
  std::vector<std::size_t> order;
  std::vector<PairVerdict> pair_verdicts;  // all i < k, lexicographic
  std::vector<IndexPair> warnings;         // means differ, intervals overlap

  std::size_t size() const noexcept { return order.size(); }

  /// Verdict of element i relative to element k; antisymmetric in (i, k).
  Verdict verdict(std::size_t i, std::size_t k) const {
    if (i == k) return Verdict::INDISTINGUISHABLE;
    const std::size_t lo = std::min(i, k), hi = std::max(i, k);
    const std::size_t n = order.size();
    // Row-major index of (lo, hi) in the strict upper triangle.
    const std::size_t idx = lo * n - lo * (lo + 1) / 2 + (hi - lo - 1);
    const Verdict v = pair_verdicts.at(idx).verdict;
    return i < k ? v : flip(v);
  }

  friend bool operator==(const RankingReport&, const RankingReport&) = default;
};

/// Orders by descending omega (ties by ascending index) and classifies every
/// pair by whether omega +/- sigma*domega intervals are strictly separated.
inline RankingReport rank(const PriorityEstimate& e, double sigma = kDefaultSigma) {
  const std::size_t n = e.size();
  RankingReport r;
  r.sigma = sigma;
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return e.omega[a] > e.omega[b]; });

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double lo_i = e.omega[i] - sigma * e.domega[i], hi_i = e.omega[i] + sigma * e.domega[i];
      const double lo_k = e.omega[k] - sigma * e.domega[k], hi_k = e.omega[k] + sigma * e.domega[k];
      Verdict v = Verdict::INDISTINGUISHABLE;
      if (lo_i > hi_k) v = Verdict::RELIABLE_GT;
      else if (lo_k > hi_i) v = Verdict::RELIABLE_LT;
      r.pair_verdicts.push_back({i, k, v});
      if (v == Verdict::INDISTINGUISHABLE && e.omega[i] != e.omega[k]) r.warnings.push_back({i, k});
    }
  }
  return r;
}

struct MethodComparison {
  PriorityEstimate gmm;  // normalized
  PriorityEstimate em;
  RankingReport gmm_report;
  RankingReport em_report;
  std::vector<bool> interval_overlap;         // per element, GMM vs EM
  std::vector<IndexPair> mean_rank_reversal_pairs;
  bool resolved = true;

  friend bool operator==(const MethodComparison&, const MethodComparison&) = default;
};

namespace detail {

inline int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace detail

/// Builds the comparison from two estimates already computed for the same
/// matrix. Mean-only rankings are taken on omega_star: the plain row
/// geometric means for GMM and the eigenvector for EM.
inline MethodComparison compare_estimates(PriorityEstimate gmm, PriorityEstimate em,
                                          double sigma = kDefaultSigma) {
  MethodComparison mc;
  mc.gmm = normalize(std::move(gmm));
  mc.em = normalize(std::move(em));
  mc.gmm_report = rank(mc.gmm, sigma);
  mc.em_report = rank(mc.em, sigma);
  const std::size_t n = mc.gmm.size();
  mc.interval_overlap.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    mc.interval_overlap[i] = std::abs(mc.gmm.omega[i] - mc.em.omega[i]) <=
                             sigma * (mc.gmm.domega[i] + mc.em.domega[i]);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      const int g = detail::sign(mc.gmm.omega_star[i] - mc.gmm.omega_star[k]);
      const int m = detail::sign(mc.em.omega_star[i] - mc.em.omega_star[k]);
      if (g * m < 0) {
        mc.mean_rank_reversal_pairs.push_back({i, k});
        if (mc.gmm_report.verdict(i, k) != Verdict::INDISTINGUISHABLE ||
            mc.em_report.verdict(i, k) != Verdict::INDISTINGUISHABLE)
          mc.resolved = false;
      }
    }
  return mc;
}

inline MethodComparison compare_methods(const ComparisonMatrix& a, double sigma = kDefaultSigma) {
  return compare_estimates(gmm_estimate(a), em_estimate(a), sigma);
}

/// GMM applied to the transposed matrix, whose outputs estimate inverse
/// values; each interval is mapped back through w = x/(x^2 - dx^2),
/// dw = dx/(x^2 - dx^2).
inline PriorityEstimate transposed_estimate(const ComparisonMatrix& a, double c = 1.0) {
  const auto inv = gmm_estimate(a.transposed(), c);
  PriorityEstimate e;
  e.method = Method::GMM_TRANSPOSED;
  e.c = c;
  e.lambda = inv.lambda;
  e.delta = inv.delta;
  const std::size_t n = inv.size();
  e.omega.resize(n);
  e.domega.resize(n);
  e.omega_star.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = inv.omega[i], dx = inv.domega[i];
    const double denom = x * x - dx * dx;
    if (!(denom > 0.0) || !std::isfinite(denom))
      throw Error(ErrorCode::DegenerateInterval,
                  "inverse-value interval of element " + std::to_string(i) + " cannot be inverted");
    e.omega[i] = x / denom;
    e.domega[i] = dx / denom;
    e.omega_star[i] = 1.0 / inv.omega_star[i];
  }
  return e;
}

/// Geometric consistency index
///   2/((n-1)(n-2)) * sum_{i<k} ln^2(a_ik * g_k / g_i)
/// with g the row geometric means. Defined for reciprocal matrices, n >= 3.
inline double gci(const ComparisonMatrix& a) {
  const std::size_t n = a.size();
  if (n < 3) throw Error(ErrorCode::NotApplicable, "GCI requires n >= 3");
  if (!a.reciprocal()) throw Error(ErrorCode::NotApplicable, "GCI requires a reciprocal matrix");
  const auto log_g = detail::row_mean_logs(a);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      const double t = std::log(a(i, k)) + log_g[k] - log_g[i];
      s += t * t;
    }
  return 2.0 * s / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
}

}  // namespace pcm
