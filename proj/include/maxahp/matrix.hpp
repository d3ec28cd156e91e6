#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "maxahp/error.hpp"

namespace maxahp {

/// Numerical thresholds shared by the engine.
///
/// `algebraic` decides equalities of cycle means and criticality,
/// `global` decides whether the normalised aggregate has unit spectral radius,
/// `tie` merges weights into one ranking class.
struct Tolerances {
  double algebraic = 1e-9;
  double global = 1e-6;
  double tie = 1e-3;
};

/// Dense nonnegative square matrix, row-major.
class MaxMatrix {
 public:
  MaxMatrix() = default;

  explicit MaxMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be at least 1");
    check_entry(fill);
  }

  MaxMatrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
    if (n_ == 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be at least 1");
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
      for (double v : row) {
        check_entry(v);
        data_.push_back(v);
      }
    }
  }

  static MaxMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    MaxMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  static MaxMatrix identity(std::size_t n) {
    MaxMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) {
    check_entry(v);
    data_[i * n_ + j] = v;
  }

  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = data_[i * n_ + j];
    return c;
  }

  std::span<const double> data() const noexcept { return data_; }

  bool is_zero() const noexcept {
    for (double v : data_)
      if (v != 0.0) return false;
    return true;
  }

  bool is_positive() const noexcept {
    for (double v : data_)
      if (!(v > 0.0)) return false;
    return true;
  }

  /// Multiplies every entry by a nonnegative finite scalar.
  MaxMatrix scaled(double c) const {
    check_entry(c);
    MaxMatrix r = *this;
    for (double& v : r.data_) v *= c;
    return r;
  }

  bool operator==(const MaxMatrix&) const = default;

 private:
  static void check_entry(double v) {
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream os;
      os << "matrix entries must be finite and nonnegative, got " << v;
      throw Error(ErrorCode::InvalidEntry, os.str());
    }
  }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Vector with strictly positive finite entries (an element of the open orthant).
class PositiveVector {
 public:
  PositiveVector() = default;

  explicit PositiveVector(std::vector<double> v) : v_(std::move(v)) {
    if (v_.empty()) throw Error(ErrorCode::DimensionMismatch, "vector must be nonempty");
    for (double x : v_) {
      if (!std::isfinite(x) || !(x > 0.0)) {
        std::ostringstream os;
        os << "vector entries must be finite and positive, got " << x;
        throw Error(ErrorCode::NotPositive, os.str());
      }
    }
  }

  PositiveVector(std::initializer_list<double> v) : PositiveVector(std::vector<double>(v)) {}

  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  std::span<const double> span() const noexcept { return v_; }
  const std::vector<double>& values() const noexcept { return v_; }

  /// Rescales so that entry `k` equals one.
  PositiveVector normalized_at(std::size_t k = 0) const {
    std::vector<double> r = v_;
    const double d = r.at(k);
    for (double& x : r) x /= d;
    return PositiveVector(std::move(r));
  }

  PositiveVector scaled(double c) const {
    std::vector<double> r = v_;
    for (double& x : r) x *= c;
    return PositiveVector(std::move(r));
  }

  bool operator==(const PositiveVector&) const = default;

 private:
  std::vector<double> v_;
};

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace maxahp
