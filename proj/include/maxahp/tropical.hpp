#pragma once

// Max-times linear algebra over dense nonnegative matrices.
//
// Path closures and cycle means run in the log domain (a -> log a, 0 -> -inf),
// which is the max-plus image of the max-times semiring; long products then
// cannot overflow or underflow.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "maxahp/error.hpp"
#include "maxahp/matrix.hpp"

namespace maxahp {

using Edge = std::pair<std::size_t, std::size_t>;

/// Critical and anticritical structure certifying a cycle mean.
struct CriticalGraph {
  std::vector<std::size_t> nodes;   // sorted
  std::vector<Edge> edges;          // lexicographic order
  std::vector<Edge> anticritical;   // edges reversed, lexicographic order
  double mu = 0.0;

  bool is_critical_node(std::size_t i) const {
    return std::binary_search(nodes.begin(), nodes.end(), i);
  }
  bool is_critical_edge(std::size_t i, std::size_t j) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{i, j});
  }
  bool is_anticritical_edge(std::size_t i, std::size_t j) const {
    return std::binary_search(anticritical.begin(), anticritical.end(), Edge{i, j});
  }
};

/// Eigen/subeigen data of a nonzero matrix with positive cycle mean.
struct SpectralProfile {
  double mu = 0.0;
  MaxMatrix star;                          // Kleene star of A / mu
  CriticalGraph critical;
  std::vector<std::size_t> basis_indices;  // columns of `star` generating the subeigencone
  std::vector<std::vector<double>> basis;
  bool unique_direction = false;
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Row-major log-domain square matrix.
struct LogMatrix {
  std::size_t n = 0;
  std::vector<double> v;

  LogMatrix(std::size_t n_, double fill) : n(n_), v(n_ * n_, fill) {}
  double& operator()(std::size_t i, std::size_t j) { return v[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

inline double safe_log(double a) { return a > 0.0 ? std::log(a) : kNegInf; }
inline double safe_exp(double l) { return l == kNegInf ? 0.0 : std::exp(l); }

inline LogMatrix to_log(const MaxMatrix& a, double shift = 0.0) {
  const std::size_t n = a.size();
  LogMatrix l(n, kNegInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) > 0.0) l(i, j) = std::log(a(i, j)) - shift;
  return l;
}

inline MaxMatrix from_log(const LogMatrix& l) {
  MaxMatrix a(l.n);
  for (std::size_t i = 0; i < l.n; ++i)
    for (std::size_t j = 0; j < l.n; ++j) a.set(i, j, safe_exp(l(i, j)));
  return a;
}

/// Maximum mean weight of a cycle (Karp). Returns -inf for an acyclic graph.
inline double max_cycle_mean_log(const LogMatrix& l) {
  const std::size_t n = l.n;
  // walk[k][v]: heaviest walk of exactly k edges ending at v, from any start.
  std::vector<std::vector<double>> walk(n + 1, std::vector<double>(n, kNegInf));
  std::fill(walk[0].begin(), walk[0].end(), 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t u = 0; u < n; ++u) {
      const double base = walk[k - 1][u];
      if (base == kNegInf) continue;
      for (std::size_t v = 0; v < n; ++v) {
        const double w = l(u, v);
        if (w == kNegInf) continue;
        walk[k][v] = std::max(walk[k][v], base + w);
      }
    }
  }
  double best = kNegInf;
  for (std::size_t v = 0; v < n; ++v) {
    if (walk[n][v] == kNegInf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (walk[k][v] == kNegInf) continue;
      worst = std::min(worst, (walk[n][v] - walk[k][v]) / static_cast<double>(n - k));
    }
    best = std::max(best, worst);
  }
  return best;
}

/// Heaviest-path closure (Floyd-Warshall in max-plus), diagonal raised to 0.
/// Assumes no positive cycle beyond rounding.
inline LogMatrix star_log(const LogMatrix& l) {
  LogMatrix p = l;
  const std::size_t n = l.n;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double ik = p(i, k);
      if (ik == kNegInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double kj = p(k, j);
        if (kj == kNegInf) continue;
        p(i, j) = std::max(p(i, j), ik + kj);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) p(i, i) = std::max(p(i, i), 0.0);
  return p;
}

inline LogMatrix multiply_log(const LogMatrix& a, const LogMatrix& b) {
  const std::size_t n = a.n;
  LogMatrix c(n, kNegInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double ik = a(i, k);
      if (ik == kNegInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double kj = b(k, j);
        if (kj == kNegInf) continue;
        c(i, j) = std::max(c(i, j), ik + kj);
      }
    }
  return c;
}

/// Boolean transitive closure (reflexive) of an adjacency relation.
inline std::vector<std::vector<bool>> reachability(std::size_t n, const std::vector<std::vector<bool>>& adj) {
  auto r = adj;
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

inline void require_square_match(const MaxMatrix& a, const MaxMatrix& b, const char* what) {
  require_same_size(a.size(), b.size(), what);
}

}  // namespace detail

/// C_ij = max_k a_ik * b_kj.
inline MaxMatrix max_matmul(const MaxMatrix& a, const MaxMatrix& b) {
  detail::require_square_match(a, b, "max_matmul");
  const std::size_t n = a.size();
  MaxMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double best = 0.0;
      for (std::size_t k = 0; k < n; ++k) best = std::max(best, a(i, k) * b(k, j));
      c.set(i, j, best);
    }
  return c;
}

/// (A x)_i = max_j a_ij x_j for a nonnegative vector.
inline std::vector<double> max_matvec(const MaxMatrix& a, std::span<const double> x) {
  require_same_size(a.size(), x.size(), "max_matvec");
  const std::size_t n = a.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] = std::max(y[i], a(i, j) * x[j]);
  return y;
}

/// Positive-vector overload. Throws NotPositive if A has a zero row.
inline PositiveVector max_matvec(const MaxMatrix& a, const PositiveVector& x) {
  return PositiveVector(max_matvec(a, x.span()));
}

/// Entrywise maximum of two matrices.
inline MaxMatrix max_sum(const MaxMatrix& a, const MaxMatrix& b) {
  detail::require_square_match(a, b, "max_sum");
  const std::size_t n = a.size();
  MaxMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.set(i, j, std::max(a(i, j), b(i, j)));
  return c;
}

/// Maximal cycle geometric mean mu(A); zero iff the digraph of A is acyclic.
inline double cycle_mean(const MaxMatrix& a) {
  return detail::safe_exp(detail::max_cycle_mean_log(detail::to_log(a)));
}

/// Test oracle for cycle_mean: enumerates every simple cycle. n <= 8.
inline double brute_force_cycle_mean(const MaxMatrix& a) {
  const std::size_t n = a.size();
  if (n > 8) throw Error(ErrorCode::DimensionTooLarge, "brute_force_cycle_mean supports n <= 8");
  double best = 0.0;
  std::vector<std::size_t> path;
  std::vector<bool> used(n, false);
  // Each cycle is visited once, rooted at its smallest node.
  auto extend = [&](auto&& self, std::size_t root, double weight) -> void {
    const std::size_t last = path.back();
    if (a(last, root) > 0.0) {
      const double w = weight * a(last, root);
      best = std::max(best, std::pow(w, 1.0 / static_cast<double>(path.size())));
    }
    for (std::size_t next = root + 1; next < n; ++next) {
      if (used[next] || a(last, next) == 0.0) continue;
      used[next] = true;
      path.push_back(next);
      self(self, root, weight * a(last, next));
      path.pop_back();
      used[next] = false;
    }
  };
  for (std::size_t root = 0; root < n; ++root) {
    path.assign(1, root);
    used.assign(n, false);
    used[root] = true;
    extend(extend, root, 1.0);
  }
  return best;
}

/// A* = I + A + ... + A^(n-1) in max-times arithmetic. Requires mu(A) <= 1.
inline MaxMatrix kleene_star(const MaxMatrix& a, double tol = Tolerances{}.algebraic) {
  const auto l = detail::to_log(a);
  const double mu_log = detail::max_cycle_mean_log(l);
  if (mu_log > tol) {
    throw Error(ErrorCode::SpectralRadiusExceedsOne,
                "kleene_star: cycle mean " + std::to_string(std::exp(mu_log)) + " exceeds one");
  }
  return detail::from_log(detail::star_log(l));
}

/// True iff the digraph of A is strongly connected.
inline bool is_irreducible(const MaxMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj[i][j] = a(i, j) > 0.0;
  const auto r = detail::reachability(n, adj);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!r[i][j]) return false;
  return true;
}

namespace detail {

struct CriticalData {
  LogMatrix normalized;  // log(A / mu)
  LogMatrix star;        // log((A / mu)*)
  CriticalGraph graph;
};

inline CriticalData critical_data(const MaxMatrix& a, double tol) {
  const auto l = to_log(a);
  const double mu_log = max_cycle_mean_log(l);
  if (mu_log == kNegInf) throw Error(ErrorCode::ZeroSpectralRadius, "matrix has no cycle (mu = 0)");
  const std::size_t n = a.size();
  LogMatrix norm = l;
  for (double& x : norm.v)
    if (x != kNegInf) x -= mu_log;
  LogMatrix star = star_log(norm);
  const LogMatrix plus = multiply_log(norm, star);

  CriticalGraph g;
  g.mu = std::exp(mu_log);
  for (std::size_t i = 0; i < n; ++i)
    if (plus(i, i) != kNegInf && std::abs(plus(i, i)) <= tol) g.nodes.push_back(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (norm(i, j) == kNegInf || plus(j, i) == kNegInf) continue;
      if (std::abs(norm(i, j) + plus(j, i)) <= tol) g.edges.emplace_back(i, j);
    }
  for (const auto& [i, j] : g.edges) g.anticritical.emplace_back(j, i);
  std::sort(g.anticritical.begin(), g.anticritical.end());
  return {std::move(norm), std::move(star), std::move(g)};
}

}  // namespace detail

/// Critical nodes/edges of A (those on cycles attaining mu(A)) and the reversed
/// (anticritical) edges.
inline CriticalGraph critical_graph(const MaxMatrix& a, double tol = Tolerances{}.algebraic) {
  return detail::critical_data(a, tol).graph;
}

/// Strongly connected components of the critical graph, each listed in
/// increasing index order; components ordered by their smallest index.
inline std::vector<std::vector<std::size_t>> critical_components(const CriticalGraph& g, std::size_t n) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [i, j] : g.edges) adj[i][j] = true;
  const auto r = detail::reachability(n, adj);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> seen(n, false);
  for (std::size_t i : g.nodes) {
    if (seen[i]) continue;
    std::vector<std::size_t> comp;
    for (std::size_t j : g.nodes)
      if (r[i][j] && r[j][i]) {
        comp.push_back(j);
        seen[j] = true;
      }
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline SpectralProfile spectral_profile(const MaxMatrix& a, double tol = Tolerances{}.algebraic) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroMatrix, "spectral_profile: zero matrix");
  auto data = detail::critical_data(a, tol);
  const std::size_t n = a.size();

  SpectralProfile p;
  p.mu = data.graph.mu;
  p.star = detail::from_log(data.star);
  const auto comps = critical_components(data.graph, n);

  std::vector<bool> critical(n, false);
  for (std::size_t i : data.graph.nodes) critical[i] = true;
  for (const auto& c : comps) p.basis_indices.push_back(c.front());
  for (std::size_t j = 0; j < n; ++j)
    if (!critical[j]) p.basis_indices.push_back(j);
  std::sort(p.basis_indices.begin(), p.basis_indices.end());
  for (std::size_t j : p.basis_indices) p.basis.push_back(p.star.column(j));

  p.unique_direction = data.graph.nodes.size() == n && comps.size() == 1;
  p.critical = std::move(data.graph);
  return p;
}

/// Entrywise maximum of the columns of (A / mu(A))*, scaled so x_1 = 1.
/// Satisfies A x <= mu(A) x.
inline PositiveVector principal_subeigenvector(const MaxMatrix& a, double tol = Tolerances{}.algebraic) {
  const auto data = detail::critical_data(a, tol);
  const std::size_t n = a.size();
  std::vector<double> z(n, detail::kNegInf);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z[i] = std::max(z[i], data.star(i, j));
  const double first = z[0];
  for (double& x : z) x = std::exp(x - first);
  return PositiveVector(std::move(z));
}

/// Positive max eigenvector of an irreducible matrix, v_1 = 1: the star column
/// of the smallest critical node.
inline PositiveVector max_eigenvector(const MaxMatrix& a, double tol = Tolerances{}.algebraic) {
  if (!is_irreducible(a)) throw Error(ErrorCode::NotIrreducible, "max_eigenvector: matrix is reducible");
  const auto data = detail::critical_data(a, tol);
  const std::size_t n = a.size();
  if (data.graph.nodes.empty()) throw Error(ErrorCode::ZeroSpectralRadius, "max_eigenvector: no critical node");
  const std::size_t c = data.graph.nodes.front();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(data.star(i, c) - data.star(0, c));
  return PositiveVector(std::move(v));
}

}  // namespace maxahp
