#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace pcm {

enum class ErrorCode {
  NonSquare,
  NonPositiveEntry,
  TooSmall,
  TooFewSamples,
  NoConvergence,
  DegenerateInterval,
  NotApplicable,
  ParseError,
  BadLabels,
  BadIndex,
  NotFound,
};

constexpr const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadLabels: return "BadLabels";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotFound: return "NotFound";
  }
  return "Unknown";
}

// Numerical failures (as opposed to bad input) map to a distinct CLI exit code.
constexpr bool is_numerical(ErrorCode code) {
  return code == ErrorCode::NoConvergence || code == ErrorCode::DegenerateInterval;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NonPositiveEntry : public Error {
 public:
  NonPositiveEntry(std::size_t row, std::size_t col)
      : Error(ErrorCode::NonPositiveEntry,
              "entry (" + std::to_string(row) + "," + std::to_string(col) +
                  ") must be positive and finite"),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

using Grid = std::vector<std::vector<double>>;

inline constexpr double kReciprocityTolerance = 1e-6;

class ComparisonMatrix;
ComparisonMatrix validate_matrix(const Grid& raw);

/// Square matrix of strictly positive judgments a_ik, row-major.
///
/// Only obtainable through validate_matrix (or helpers built on it), so every
/// instance is known to be square, n >= 2, and entrywise positive. The
/// reciprocity flag is computed once at construction.
class ComparisonMatrix {
 public:
  std::size_t size() const noexcept { return n_; }
  bool reciprocal() const noexcept { return reciprocal_; }

  double operator()(std::size_t i, std::size_t k) const { return entries_[i * n_ + k]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(entries_).subspan(i * n_, n_);
  }

  std::span<const double> entries() const noexcept { return entries_; }

  Grid to_grid() const {
    Grid grid(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) grid[i][k] = (*this)(i, k);
    return grid;
  }

  ComparisonMatrix transposed() const {
    ComparisonMatrix t = *this;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) t.entries_[i * n_ + k] = (*this)(k, i);
    return t;
  }

  friend bool operator==(const ComparisonMatrix&, const ComparisonMatrix&) = default;

 private:
  ComparisonMatrix(std::size_t n, std::vector<double> entries)
      : n_(n), entries_(std::move(entries)) {
    reciprocal_ = true;
    for (std::size_t i = 0; i < n_ && reciprocal_; ++i)
      for (std::size_t k = i; k < n_; ++k)
        if (std::abs((*this)(i, k) * (*this)(k, i) - 1.0) > kReciprocityTolerance) {
          reciprocal_ = false;
          break;
        }
  }

  friend ComparisonMatrix validate_matrix(const Grid& raw);

  std::size_t n_ = 0;
  std::vector<double> entries_;
  bool reciprocal_ = false;
};

inline ComparisonMatrix validate_matrix(const Grid& raw) {
  const std::size_t n = raw.size();
  for (const auto& r : raw)
    if (r.size() != n) throw Error(ErrorCode::NonSquare, "matrix must be square");
  if (n < 2) throw Error(ErrorCode::TooSmall, "matrix must have at least 2 elements");

  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double a = raw[i][k];
      if (!std::isfinite(a) || a <= 0.0) throw NonPositiveEntry(i, k);
      entries.push_back(a);
    }
  return ComparisonMatrix(n, std::move(entries));
}

/// True iff |a_ik a_kr / (a_ir a_kk) - 1| <= tol for every triple. The
/// a_kk factor is 1 for reciprocal matrices and makes c * v_i / v_k count
/// as transitive for any scale c.
inline bool is_transitive(const ComparisonMatrix& a, double tol) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r)
        if (std::abs(a(i, k) * a(k, r) / (a(i, r) * a(k, k)) - 1.0) > tol) return false;
  return true;
}

/// a_ik = c * values_i / values_k.
inline ComparisonMatrix consistent_matrix_from_values(std::span<const double> values, double c = 1.0) {
  const std::size_t n = values.size();
  Grid grid(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) grid[i][k] = c * values[i] / values[k];
  return validate_matrix(grid);
}

inline ComparisonMatrix consistent_matrix_from_values(std::initializer_list<double> values, double c = 1.0) {
  return consistent_matrix_from_values(std::span<const double>(values.begin(), values.size()), c);
}

/// Display names for the compared elements.
class ElementLabels {
 public:
  ElementLabels() = default;

  explicit ElementLabels(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw Error(ErrorCode::BadLabels, "labels must be non-empty");
      if (!seen.insert(l).second) throw Error(ErrorCode::BadLabels, "duplicate label: " + l);
    }
  }

  /// Default names omega_1 ... omega_n.
  static ElementLabels numbered(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("ω_" + std::to_string(i + 1));
    return ElementLabels(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& names() const noexcept { return labels_; }

  friend bool operator==(const ElementLabels&, const ElementLabels&) = default;

 private:
  std::vector<std::string> labels_;
};

}  // namespace pcm
