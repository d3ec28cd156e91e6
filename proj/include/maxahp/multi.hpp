#pragma once

// Several criteria at once: the aggregate S = A_1 + ... + A_m (entrywise max),
// its spectral radius, common subeigenvectors and min-max optimal weights.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxahp/error.hpp"
#include "maxahp/matrix.hpp"
#include "maxahp/problem.hpp"
#include "maxahp/sr_matrix.hpp"
#include "maxahp/tropical.hpp"

namespace maxahp {

namespace detail {

inline void require_nonempty_family(std::span<const MaxMatrix> ps, const char* what) {
  if (ps.empty()) throw Error(ErrorCode::SchemaError, std::string(what) + ": empty matrix family");
  for (const auto& a : ps) require_same_size(a.size(), ps.front().size(), what);
}

inline bool within_rel(double value, double bound, double tol) { return value <= bound * (1.0 + tol); }

}  // namespace detail

/// Entrywise maximum of the family; with `normalized`, each A_i is first divided
/// by mu(A_i).
inline MaxMatrix aggregate(std::span<const MaxMatrix> ps, bool normalized = false) {
  detail::require_nonempty_family(ps, "aggregate");
  MaxMatrix s(ps.front().size());
  for (const auto& a : ps) {
    MaxMatrix term = a;
    if (normalized) {
      const double mu = cycle_mean(a);
      if (mu == 0.0) throw Error(ErrorCode::ZeroSpectralRadius, "aggregate: cannot normalise a matrix with mu = 0");
      term = a.scaled(1.0 / mu);
    }
    s = max_sum(s, term);
  }
  return s;
}

/// Generalised (joint) max spectral radius of the family, computed as mu(S).
inline double gen_spectral_radius(std::span<const MaxMatrix> ps) {
  detail::require_nonempty_family(ps, "gen_spectral_radius");
  if (std::all_of(ps.begin(), ps.end(), [](const MaxMatrix& a) { return a.is_zero(); }))
    throw Error(ErrorCode::AllZero, "gen_spectral_radius: every matrix is zero");
  return cycle_mean(aggregate(ps));
}

/// Finite-horizon oracle for the generalised spectral radius: the maximum over
/// p <= p_max of (max over length-p products psi of mu(psi))^(1/p).
/// Products are enumerated exhaustively; cycle means of the products come from
/// simple-cycle enumeration when n <= 8.
inline double brute_force_gsr(std::span<const MaxMatrix> ps, int p_max, double max_products = 2e6) {
  detail::require_nonempty_family(ps, "brute_force_gsr");
  if (p_max < 1) throw Error(ErrorCode::SchemaError, "brute_force_gsr: p_max must be at least 1");
  const double m = static_cast<double>(ps.size());
  double total = 0.0, layer = 1.0;
  for (int p = 1; p <= p_max; ++p) {
    layer *= m;
    total += layer;
  }
  if (total > max_products) {
    throw Error(ErrorCode::ExplosionGuard, "brute_force_gsr: " + std::to_string(total) +
                                               " products exceed the enumeration limit");
  }
  const bool small = ps.front().size() <= 8;
  auto mu_of = [&](const MaxMatrix& a) { return small ? brute_force_cycle_mean(a) : cycle_mean(a); };

  double best = 0.0;
  auto descend = [&](auto&& self, const MaxMatrix& prod, int depth) -> void {
    best = std::max(best, std::pow(mu_of(prod), 1.0 / depth));
    if (depth == p_max) return;
    for (const auto& a : ps) self(self, max_matmul(prod, a), depth + 1);
  };
  for (const auto& a : ps) descend(descend, a, 1);
  return best;
}

/// A common subeigenvector x with A_i x <= mu(A_i) x for all i, when one exists
/// (exactly when mu(S^) = 1 for the normalised aggregate).
inline std::optional<PositiveVector> global_optimum(std::span<const MaxMatrix> ps, const Tolerances& tol = {}) {
  const MaxMatrix s_hat = aggregate(ps, true);
  const double mu_hat = cycle_mean(s_hat);
  if (mu_hat > 1.0 + tol.global) return std::nullopt;
  return principal_subeigenvector(s_hat, tol.algebraic);
}

/// True iff A B and B A agree entrywise within relative tolerance.
inline bool commutes(const MaxMatrix& a, const MaxMatrix& b, double tol = Tolerances{}.algebraic) {
  const MaxMatrix ab = max_matmul(a, b);
  const MaxMatrix ba = max_matmul(b, a);
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = ab(i, j), y = ba(i, j);
      if (std::abs(x - y) > tol * std::max(x, y)) return false;
    }
  return true;
}

enum class VisualizationFailure {
  AboveMu,                  // x_k^-1 a_kl x_l > mu(A)
  BelowInverseMu,           // x_k^-1 a_kl x_l < 1 / mu(A)
  CriticalNotAtMu,          // critical edge not scaled to mu(A)
  AnticriticalNotAtInverse  // anticritical edge not scaled to 1 / mu(A)
};

inline std::string_view to_string(VisualizationFailure f) {
  switch (f) {
    case VisualizationFailure::AboveMu: return "above_mu";
    case VisualizationFailure::BelowInverseMu: return "below_inverse_mu";
    case VisualizationFailure::CriticalNotAtMu: return "critical_not_at_mu";
    case VisualizationFailure::AnticriticalNotAtInverse: return "anticritical_not_at_inverse_mu";
  }
  return "unknown";
}

struct VisualizationViolation {
  std::size_t matrix = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  VisualizationFailure kind{};
  double value = 0.0;  // (X^-1 A X)_kl
  double bound = 0.0;
};

struct VisualizationReport {
  std::vector<double> mu;  // mu(A_i)
  std::vector<VisualizationViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks that X = diag(x) visualises every A_i simultaneously:
/// mu(A_i)^-1 <= X^-1 A_i X <= mu(A_i), with equality on critical and
/// anticritical edges. All comparisons are relative with `tol`.
inline VisualizationReport visualization_check(std::span<const MaxMatrix> ps, const PositiveVector& x,
                                               const Tolerances& tol = {}) {
  detail::require_nonempty_family(ps, "visualization_check");
  require_same_size(ps.front().size(), x.size(), "visualization_check");
  VisualizationReport rep;
  const std::size_t n = x.size();
  for (std::size_t m = 0; m < ps.size(); ++m) {
    const auto& a = ps[m];
    const CriticalGraph g = critical_graph(a, tol.algebraic);
    const double mu = g.mu;
    rep.mu.push_back(mu);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const double v = a(k, l) * x[l] / x[k];
        auto add = [&](VisualizationFailure f, double bound) { rep.violations.push_back({m, k, l, f, v, bound}); };
        if (v > mu * (1.0 + tol.global)) add(VisualizationFailure::AboveMu, mu);
        if (v < (1.0 / mu) * (1.0 - tol.global)) add(VisualizationFailure::BelowInverseMu, 1.0 / mu);
        if (g.is_critical_edge(k, l) && std::abs(v - mu) > tol.global * mu)
          add(VisualizationFailure::CriticalNotAtMu, mu);
        if (g.is_anticritical_edge(k, l) && std::abs(v - 1.0 / mu) > tol.global / mu)
          add(VisualizationFailure::AnticriticalNotAtInverse, 1.0 / mu);
      }
  }
  return rep;
}

/// x in C_{Psi,r}: every e_{A_i}(x) <= r (relative tolerance `tol`).
inline bool membership_C_Psi(std::span<const MaxMatrix> ps, std::span<const double> x, double r,
                             double tol = Tolerances{}.algebraic) {
  detail::require_nonempty_family(ps, "membership_C_Psi");
  return std::all_of(ps.begin(), ps.end(),
                     [&](const MaxMatrix& a) { return detail::within_rel(relative_error(a, x), r, tol); });
}

/// The same set described through the aggregate: e_S(x) <= r.
inline bool membership_C_S(const MaxMatrix& s, std::span<const double> x, double r,
                           double tol = Tolerances{}.algebraic) {
  return detail::within_rel(relative_error(s, x), r, tol);
}

struct MultiResult {
  MaxMatrix s;                                 // aggregate of the family
  double mu_hat = 0.0;                         // mu(S)
  double mu_hat_normalized = 0.0;              // mu of the normalised aggregate
  std::optional<PositiveVector> global_opt;
  PositiveVector minmax;                       // in D_Psi, first entry 1
  bool unique_minmax = false;
  std::vector<double> errors;                  // e_{A_i}(minmax)
};

/// Min-max optimal weights: minimise max_i e_{A_i}(x). The optimal value is
/// mu(S) and the minimisers are the positive subeigenvectors of S; the
/// representative returned is the principal subeigenvector.
inline MultiResult minmax_solution(std::span<const MaxMatrix> ps, const Tolerances& tol = {}) {
  detail::require_nonempty_family(ps, "minmax_solution");
  if (std::all_of(ps.begin(), ps.end(), [](const MaxMatrix& a) { return a.is_zero(); }))
    throw Error(ErrorCode::AllZero, "minmax_solution: every matrix is zero");
  MultiResult r;
  r.s = aggregate(ps);
  const SpectralProfile prof = spectral_profile(r.s, tol.algebraic);
  r.mu_hat = prof.mu;
  r.unique_minmax = prof.unique_direction;
  r.minmax = principal_subeigenvector(r.s, tol.algebraic);
  r.mu_hat_normalized = cycle_mean(aggregate(ps, true));
  r.global_opt = global_optimum(ps, tol);
  for (const auto& a : ps) r.errors.push_back(relative_error(a, r.minmax));
  return r;
}

inline MultiResult minmax_solution(const Problem& p) {
  const auto ms = p.plain_matrices();
  return minmax_solution(ms, p.tol);
}

}  // namespace maxahp
