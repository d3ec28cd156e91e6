#pragma once

// Classical AHP eigenvector pipeline in ordinary (plus-times) arithmetic.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "maxahp/error.hpp"
#include "maxahp/matrix.hpp"
#include "maxahp/problem.hpp"
#include "maxahp/ranking.hpp"
#include "maxahp/sr_matrix.hpp"

namespace maxahp {

struct PerronResult {
  double rho = 0.0;
  PositiveVector v;  // unit Euclidean norm
};

/// Dominant eigenpair of a positive matrix by power iteration.
inline PerronResult perron_vector(const MaxMatrix& a, int max_iters = 10000, double tol = 1e-14) {
  if (!a.is_positive()) throw Error(ErrorCode::NotPositive, "perron_vector: matrix must be positive");
  const std::size_t n = a.size();
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n))), next(n);
  double rho = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
      next[i] = s;
    }
    double norm = 0.0;
    for (double x : next) norm += x * x;
    norm = std::sqrt(norm);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= norm;
      diff = std::max(diff, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    rho = norm;
    if (diff <= tol) return {rho, PositiveVector(v)};
  }
  throw Error(ErrorCode::NoConvergence,
              "perron_vector: no convergence after " + std::to_string(max_iters) + " iterations");
}

inline PerronResult perron_vector(const SRMatrix& a, int max_iters = 10000, double tol = 1e-14) {
  return perron_vector(a.matrix(), max_iters, tol);
}

struct ClassicalResult {
  PositiveVector criteria_weights;             // Perron vector of the criteria matrix
  std::vector<PositiveVector> per_criterion;   // Perron vector of each A_i
  std::vector<Ranking> per_criterion_rankings;
  PositiveVector weights;                      // sum_i c_i v^(i)
  Ranking ranking;
};

/// Weighted sum of per-criterion Perron vectors using the Perron vector of the
/// criteria comparison matrix.
inline ClassicalResult classical_ahp(const Problem& p) {
  if (!p.criteria) throw Error(ErrorCode::MissingCriteria, "classical_ahp needs a criteria comparison matrix");
  ClassicalResult r;
  r.criteria_weights = perron_vector(*p.criteria).v;
  std::vector<double> w(p.n(), 0.0);
  for (std::size_t k = 0; k < p.m(); ++k) {
    auto v = perron_vector(p.matrices[k]).v;
    for (std::size_t i = 0; i < p.n(); ++i) w[i] += r.criteria_weights[k] * v[i];
    r.per_criterion_rankings.push_back(rank_alternatives(v, p.tol.tie));
    r.per_criterion.push_back(std::move(v));
  }
  r.weights = PositiveVector(std::move(w));
  r.ranking = rank_alternatives(r.weights, p.tol.tie);
  return r;
}

}  // namespace maxahp
