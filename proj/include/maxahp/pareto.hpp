#pragma once

// Pareto optimal weights for the objectives e_{A_1}, ..., e_{A_m}.
//
// pareto_point minimises a positive weighted sum of the objectives over the
// min-max optimal set D_Psi = { x : x_1 = 1, e_S(x) <= mu(S) }. Such a
// minimiser is Pareto optimal over the whole positive orthant and is also
// min-max optimal. In log coordinates every e_A is the exponential of a
// maximum of affine forms, so the objective is convex there.
//
// pareto_oracle is the independent check: a direct search for points that
// dominate a candidate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "maxahp/error.hpp"
#include "maxahp/matrix.hpp"
#include "maxahp/multi.hpp"
#include "maxahp/problem.hpp"
#include "maxahp/ranking.hpp"
#include "maxahp/sr_matrix.hpp"
#include "maxahp/tropical.hpp"

namespace maxahp {

/// Regular grid in log space centred on the candidate, covering every
/// coordinate (points_per_axis^n samples).
struct GridSampler {
  std::size_t points_per_axis = 21;
  double half_width = 0.5;
};

/// Gaussian clouds in log space around the candidate at several radii, plus
/// uniform samples over a wide log box.
struct CloudSampler {
  std::size_t local_samples = 20000;
  std::size_t global_samples = 5000;
  std::vector<double> radii{1e-1, 1e-2, 1e-3, 1e-4, 1e-6};
  double global_half_width = 3.0;
  std::uint64_t seed = 1;
};

using Sampler = std::variant<GridSampler, CloudSampler>;

/// Margins for deciding domination in floating point. A sample must not be
/// worse than the candidate by more than `equal` (relative) in any objective
/// and must beat it by more than `gain` (relative) where an improvement is
/// claimed.
struct DominanceTolerance {
  double equal = 1e-12;
  double gain = 1e-8;
};

enum class Refutation { None, Strict, Weak };

inline std::string_view to_string(Refutation r) {
  switch (r) {
    case Refutation::None: return "not_refuted";
    case Refutation::Strict: return "strictly_dominated";
    case Refutation::Weak: return "weakly_dominated";
  }
  return "unknown";
}

struct ParetoVerdict {
  Refutation refutation = Refutation::None;
  std::size_t samples = 0;
  std::optional<PositiveVector> counterexample;  // normalised x_1 = 1
  std::vector<double> counterexample_errors;

  bool refuted() const { return refutation != Refutation::None; }
};

namespace detail {

inline std::vector<double> objective_values(std::span<const MaxMatrix> ps, std::span<const double> x) {
  std::vector<double> e;
  e.reserve(ps.size());
  for (const auto& a : ps) e.push_back(relative_error(a, x));
  return e;
}

/// Classifies `ex` against the candidate values `ew`. Weak: every objective
/// strictly better. Strict: none worse and at least one strictly better.
inline Refutation dominance(std::span<const double> ex, std::span<const double> ew, const DominanceTolerance& t) {
  bool all_better = true, any_better = false;
  for (std::size_t i = 0; i < ew.size(); ++i) {
    if (ex[i] > ew[i] * (1.0 + t.equal)) return Refutation::None;
    const bool better = ex[i] < ew[i] * (1.0 - t.gain);
    any_better = any_better || better;
    all_better = all_better && better;
  }
  if (all_better) return Refutation::Weak;
  return any_better ? Refutation::Strict : Refutation::None;
}

inline double relative_gain(std::span<const double> ex, std::span<const double> ew) {
  double g = 0.0;
  for (std::size_t i = 0; i < ew.size(); ++i) g += (ew[i] - ex[i]) / ew[i];
  return g;
}

}  // namespace detail

/// Searches for a point dominating `w`. Among all dominating samples the one
/// with the largest summed relative gain is reported; a weak refutation
/// (every objective improved) takes precedence over a strict one.
inline ParetoVerdict pareto_oracle(std::span<const MaxMatrix> ps, const PositiveVector& w, const Sampler& sampler,
                                   const DominanceTolerance& tol = {}) {
  detail::require_nonempty_family(ps, "pareto_oracle");
  require_same_size(ps.front().size(), w.size(), "pareto_oracle");
  const std::size_t n = w.size();
  const auto ew = detail::objective_values(ps, w.span());

  std::vector<double> logw(n);
  for (std::size_t i = 0; i < n; ++i) logw[i] = std::log(w[i]);

  ParetoVerdict verdict;
  double best_gain = -1.0;
  std::vector<double> x(n);
  auto consider = [&] {
    ++verdict.samples;
    const auto ex = detail::objective_values(ps, x);
    const Refutation r = detail::dominance(ex, ew, tol);
    if (r == Refutation::None) return;
    const double gain = detail::relative_gain(ex, ew);
    // Refutation is ordered None < Strict < Weak.
    if (r > verdict.refutation || (r == verdict.refutation && gain > best_gain)) {
      verdict.refutation = r;
      best_gain = gain;
      verdict.counterexample = PositiveVector(x).normalized_at(0);
      verdict.counterexample_errors = ex;
    }
  };

  if (const auto* grid = std::get_if<GridSampler>(&sampler)) {
    const std::size_t k = std::max<std::size_t>(grid->points_per_axis, 1);
    const double total = std::pow(static_cast<double>(k), static_cast<double>(n));
    if (total > 5e7) throw Error(ErrorCode::ExplosionGuard, "pareto_oracle: grid too large");
    std::vector<std::size_t> idx(n, 0);
    const double step = k > 1 ? 2.0 * grid->half_width / static_cast<double>(k - 1) : 0.0;
    const double lo = k > 1 ? -grid->half_width : 0.0;
    while (true) {
      for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(logw[i] + lo + step * static_cast<double>(idx[i]));
      consider();
      std::size_t d = 0;
      while (d < n && ++idx[d] == k) idx[d++] = 0;
      if (d == n) break;
    }
  } else {
    const auto& cloud = std::get<CloudSampler>(sampler);
    std::mt19937_64 rng(cloud.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(-cloud.global_half_width, cloud.global_half_width);
    for (std::size_t s = 0; s < cloud.local_samples; ++s) {
      const double radius = cloud.radii.empty() ? 0.1 : cloud.radii[s % cloud.radii.size()];
      for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(logw[i] + radius * normal(rng));
      consider();
    }
    for (std::size_t s = 0; s < cloud.global_samples; ++s) {
      for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(logw[i] + uniform(rng));
      consider();
    }
  }
  return verdict;
}

struct ParetoCertificate {
  std::size_t samples = 0;
  bool weakly_dominated = false;
  bool strictly_dominated = false;
  std::size_t polish_steps = 0;  // dominating moves accepted before the final search
};

struct ParetoResult {
  PositiveVector point;                  // in D_Psi, first entry 1
  std::vector<double> objective_values;  // e_{A_i}(point)
  double weighted_objective = 0.0;
  Ranking ranking;
  ParetoCertificate certificate;
  std::size_t start_index = 0;
};

struct ParetoOptions {
  std::size_t extra_starts = 4;        // random starts in addition to the canonical ones
  std::uint64_t seed = 42;
  double start_spread = 0.3;           // log-space std. deviation of random starts
  int max_evaluations = 40000;         // per simplex run
  int restarts = 12;
  double penalty_factor = 10.0;        // times mu(S)
  double dedup_tol = 1e-6;             // max |log x - log y|
  std::size_t polish_rounds = 25;
  std::size_t polish_samples = 4000;
  CloudSampler certificate{};
  DominanceTolerance dominance{};
};

namespace detail {

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
};

/// Nelder-Mead downhill simplex with standard coefficients, restarted from
/// the incumbent with a shrinking initial simplex until a restart no longer
/// improves the value.
inline SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                                 double step, int max_evals, int restarts, double ftol = 1e-15,
                                 double xtol = 1e-13) {
  const std::size_t d = x0.size();
  SimplexResult best{x0, f(x0), 1};
  if (d == 0) return best;

  for (int round = 0; round <= restarts; ++round) {
    std::vector<std::vector<double>> simplex(d + 1, best.x);
    std::vector<double> fv(d + 1);
    fv[0] = best.f;
    for (std::size_t i = 0; i < d; ++i) {
      simplex[i + 1][i] += step;
      fv[i + 1] = f(simplex[i + 1]);
    }
    int evals = static_cast<int>(d);
    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), xr(d), xe(d), xc(d);

    while (evals < max_evals) {
      for (std::size_t i = 0; i <= d; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[d - 1];

      double spread = 0.0;
      for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t k = 0; k < d; ++k) spread = std::max(spread, std::abs(simplex[i][k] - simplex[lo][k]));
      if (fv[hi] - fv[lo] <= ftol * std::max(1.0, std::abs(fv[lo])) && spread <= xtol) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= d; ++i)
        if (i != hi)
          for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k] / static_cast<double>(d);

      for (std::size_t k = 0; k < d; ++k) xr[k] = centroid[k] + (centroid[k] - simplex[hi][k]);
      const double fr = f(xr);
      ++evals;
      if (fr < fv[lo]) {
        for (std::size_t k = 0; k < d; ++k) xe[k] = centroid[k] + 2.0 * (centroid[k] - simplex[hi][k]);
        const double fe = f(xe);
        ++evals;
        if (fe < fr) {
          simplex[hi] = xe;
          fv[hi] = fe;
        } else {
          simplex[hi] = xr;
          fv[hi] = fr;
        }
        continue;
      }
      if (fr < fv[second]) {
        simplex[hi] = xr;
        fv[hi] = fr;
        continue;
      }
      const bool outside = fr < fv[hi];
      for (std::size_t k = 0; k < d; ++k)
        xc[k] = outside ? centroid[k] + 0.5 * (xr[k] - centroid[k]) : centroid[k] + 0.5 * (simplex[hi][k] - centroid[k]);
      const double fc = f(xc);
      ++evals;
      if (fc < (outside ? fr : fv[hi])) {
        simplex[hi] = xc;
        fv[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= d; ++i) {
        if (i == lo) continue;
        for (std::size_t k = 0; k < d; ++k) simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
        fv[i] = f(simplex[i]);
        ++evals;
      }
    }
    best.evaluations += evals;

    const std::size_t lo = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    const bool improved = fv[lo] < best.f - ftol * std::max(1.0, std::abs(best.f));
    if (fv[lo] < best.f) {
      best.x = simplex[lo];
      best.f = fv[lo];
    }
    if (!improved && round > 0) break;
    step = std::max(step * 0.25, 1e-9);
  }
  return best;
}

/// x -> (S/mu)* x, normalised to x_1 = 1: maps any positive x into D_S and
/// leaves points of D_S unchanged. `star_log` is log((S/mu)*).
inline PositiveVector project_to_subeigencone(const LogMatrix& star, std::span<const double> x) {
  const std::size_t n = star.n;
  std::vector<double> y(n, kNegInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (star(i, j) != kNegInf) y[i] = std::max(y[i], star(i, j) + std::log(x[j]));
  const double first = y[0];
  for (double& v : y) v = std::exp(v - first);
  return PositiveVector(std::move(y));
}

inline double weighted_sum(std::span<const double> alpha, std::span<const double> e) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) s += alpha[i] * e[i];
  return s;
}

inline double max_log_distance(const PositiveVector& a, const PositiveVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(std::log(a[i]) - std::log(b[i])));
  return d;
}

}  // namespace detail

/// Pareto optimal points in D_Psi from minimising sum_i alpha_i e_{A_i}(x).
///
/// The minimisation runs in log coordinates with x_1 fixed, from every
/// normalised column of (S/mu(S))*, the principal subeigenvector of S and
/// `extra_starts` seeded random perturbations of it. The constraint
/// e_S(x) <= mu(S) is enforced by an exact penalty; each local result is then
/// mapped into D_Psi by the Kleene star of S/mu(S) and improved by accepting
/// dominating points found by pareto_oracle until none is found. Points that
/// remain dominated are discarded. Survivors are deduplicated by proximity and
/// by ranking (the lower weighted objective wins), in start order.
inline std::vector<ParetoResult> pareto_point(std::span<const MaxMatrix> ps, std::span<const double> alpha,
                                              const ParetoOptions& opts = {}, const Tolerances& tol = {}) {
  detail::require_nonempty_family(ps, "pareto_point");
  if (alpha.size() != ps.size()) {
    throw Error(ErrorCode::InfeasibleAlpha, "pareto_point: expected " + std::to_string(ps.size()) +
                                                " criteria weights, got " + std::to_string(alpha.size()));
  }
  for (double a : alpha)
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InfeasibleAlpha, "pareto_point: weights must be positive");

  const std::size_t n = ps.front().size();
  const MaxMatrix s = aggregate(ps);
  const double mu_hat = cycle_mean(s);
  if (mu_hat == 0.0) throw Error(ErrorCode::ZeroSpectralRadius, "pareto_point: mu(S) = 0");
  const detail::LogMatrix star = detail::star_log(detail::to_log(s, std::log(mu_hat)));

  std::vector<PositiveVector> starts;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> g(n);
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (star(i, j) == detail::kNegInf) positive = false;
      g[i] = std::exp(star(i, j) - star(0, j));
    }
    if (positive) starts.emplace_back(std::move(g));
  }
  const PositiveVector principal = principal_subeigenvector(s, tol.algebraic);
  starts.push_back(principal);
  {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, opts.start_spread);
    for (std::size_t k = 0; k < opts.extra_starts; ++k) {
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = principal[i] * std::exp(i == 0 ? 0.0 : normal(rng));
      starts.emplace_back(std::move(g));
    }
  }

  const double penalty = opts.penalty_factor * mu_hat;
  std::vector<double> x(n);
  auto objective = [&](std::span<const double> y) {
    x[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) x[i] = std::exp(y[i - 1]);
    double sum = 0.0, worst = 0.0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const double e = relative_error(ps[k], x);
      sum += alpha[k] * e;
      worst = std::max(worst, e);
    }
    return sum + penalty * std::max(0.0, worst - mu_hat);
  };

  std::vector<ParetoResult> found;
  for (std::size_t si = 0; si < starts.size(); ++si) {
    std::vector<double> y0(n - 1);
    for (std::size_t i = 1; i < n; ++i) y0[i - 1] = std::log(starts[si][i]);
    const auto local = detail::nelder_mead(objective, y0, 0.1, opts.max_evaluations, opts.restarts);
    if (!std::isfinite(local.f)) continue;

    std::vector<double> xs(n, 1.0);
    for (std::size_t i = 1; i < n; ++i) xs[i] = std::exp(local.x[i - 1]);
    PositiveVector point = detail::project_to_subeigencone(star, xs);

    ParetoCertificate cert;
    for (std::size_t round = 0; round < opts.polish_rounds; ++round) {
      CloudSampler probe = opts.certificate;
      probe.local_samples = opts.polish_samples;
      probe.global_samples = 0;
      probe.seed = opts.seed + 7919 * (si + 1) + round;
      const auto v = pareto_oracle(ps, point, probe, opts.dominance);
      if (!v.refuted()) break;
      point = detail::project_to_subeigencone(star, v.counterexample->span());
      ++cert.polish_steps;
    }

    CloudSampler final_probe = opts.certificate;
    final_probe.seed = opts.certificate.seed + si;
    const auto verdict = pareto_oracle(ps, point, final_probe, opts.dominance);
    cert.samples = verdict.samples;
    cert.weakly_dominated = verdict.refutation == Refutation::Weak;
    cert.strictly_dominated = verdict.refuted();
    if (cert.strictly_dominated) continue;

    ParetoResult r;
    r.objective_values = detail::objective_values(ps, point.span());
    r.weighted_objective = detail::weighted_sum(alpha, r.objective_values);
    r.ranking = rank_alternatives(point, tol.tie);
    r.point = std::move(point);
    r.certificate = cert;
    r.start_index = si;
    found.push_back(std::move(r));
  }
  if (found.empty()) throw Error(ErrorCode::SolverFailure, "pareto_point: no start produced an undominated point");

  std::vector<ParetoResult> out;
  for (auto& r : found) {
    auto same = std::find_if(out.begin(), out.end(), [&](const ParetoResult& o) {
      return detail::max_log_distance(o.point, r.point) <= opts.dedup_tol || o.ranking == r.ranking;
    });
    if (same == out.end()) {
      out.push_back(std::move(r));
    } else if (r.weighted_objective < same->weighted_objective) {
      *same = std::move(r);
    }
  }
  return out;
}

/// Default criteria weights of a problem: explicit weights if given, else the
/// max eigenvector of the criteria matrix scaled to alpha_1 = 1, else ones.
inline std::vector<double> default_alpha(const Problem& p) {
  if (p.alpha) return *p.alpha;
  if (p.criteria) return max_eigenvector(p.criteria->matrix(), p.tol.algebraic).values();
  return std::vector<double>(p.m(), 1.0);
}

inline std::vector<ParetoResult> pareto_point(const Problem& p, std::optional<std::vector<double>> alpha = std::nullopt,
                                              const ParetoOptions& opts = {}) {
  const auto ms = p.plain_matrices();
  const auto a = alpha ? *alpha : default_alpha(p);
  return pareto_point(ms, a, opts, p.tol);
}

}  // namespace maxahp
