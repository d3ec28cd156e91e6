#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxahp/error.hpp"
#include "maxahp/matrix.hpp"
#include "maxahp/tropical.hpp"

namespace maxahp {

/// Raised by validate_sr. `entries` holds every offending (i, j), zero-based;
/// reciprocity violations list each unordered pair once with i < j.
class SRValidationError : public Error {
 public:
  SRValidationError(ErrorCode code, const std::string& what, std::vector<Edge> entries)
      : Error(code, what), entries_(std::move(entries)) {}

  const std::vector<Edge>& entries() const noexcept { return entries_; }

 private:
  std::vector<Edge> entries_;
};

/// Symmetrically reciprocal pairwise comparison matrix: positive, unit
/// diagonal, a_ij * a_ji = 1.
class SRMatrix {
 public:
  const MaxMatrix& matrix() const noexcept { return base_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return base_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return base_(i, j); }

  operator const MaxMatrix&() const noexcept { return base_; }

 private:
  friend SRMatrix validate_sr(const MaxMatrix&, std::vector<std::string>, double);
  SRMatrix(MaxMatrix m, std::vector<std::string> labels) : base_(std::move(m)), labels_(std::move(labels)) {}

  MaxMatrix base_;
  std::vector<std::string> labels_;
};

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(std::to_string(i + 1));
  return l;
}

namespace detail {

inline std::string format_entries(const std::vector<Edge>& e) {
  std::ostringstream os;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k) os << ", ";
    os << "(" << e[k].first + 1 << "," << e[k].second + 1 << ")";
  }
  return os.str();
}

}  // namespace detail

/// Checks the SR laws and reports every violating entry, not only the first.
inline SRMatrix validate_sr(const MaxMatrix& m, std::vector<std::string> labels = {},
                            double tol = Tolerances{}.algebraic) {
  const std::size_t n = m.size();
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "validate_sr: " + std::to_string(labels.size()) +
                                                  " labels for a " + std::to_string(n) + "x" +
                                                  std::to_string(n) + " matrix");
  }

  std::vector<Edge> nonpositive, diagonal, reciprocal;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(m(i, j) > 0.0)) nonpositive.emplace_back(i, j);
  if (!nonpositive.empty()) {
    throw SRValidationError(ErrorCode::NotPositive,
                            "SR matrix must be positive; nonpositive entries at " +
                                detail::format_entries(nonpositive),
                            nonpositive);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (m(i, i) != 1.0) diagonal.emplace_back(i, i);
  if (!diagonal.empty()) {
    throw SRValidationError(ErrorCode::DiagonalNotOne,
                            "SR matrix diagonal must be 1; violated at " + detail::format_entries(diagonal),
                            diagonal);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) * m(j, i) - 1.0) > tol) reciprocal.emplace_back(i, j);
  if (!reciprocal.empty()) {
    throw SRValidationError(ErrorCode::ReciprocityViolated,
                            "SR matrix must satisfy a_ij * a_ji = 1; violated at " +
                                detail::format_entries(reciprocal),
                            reciprocal);
  }
  return SRMatrix(m, std::move(labels));
}

/// e_A(x) = max_ij a_ij x_j / x_i. Invariant under positive rescaling of x.
inline double relative_error(const MaxMatrix& a, std::span<const double> x) {
  require_same_size(a.size(), x.size(), "relative_error");
  const std::size_t n = a.size();
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e = std::max(e, a(i, j) * x[j] / x[i]);
  return e;
}

inline double relative_error(const MaxMatrix& a, const PositiveVector& x) { return relative_error(a, x.span()); }

/// The consistent matrix t_ij = w_i / w_j.
inline SRMatrix transitive_from_weights(const PositiveVector& w, std::vector<std::string> labels = {}) {
  const std::size_t n = w.size();
  MaxMatrix t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t.set(i, j, i == j ? 1.0 : w[i] / w[j]);
  return validate_sr(t, std::move(labels));
}

}  // namespace maxahp
