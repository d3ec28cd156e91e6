#pragma once

// CSV report tables for a problem: weights and per-criterion errors for each
// method, and an (e_A, e_B) scatter for the first two criteria.
//
//   weights.csv        method,alternative,weight,rank
//   errors.csv         method,criterion,relative_error
//   scatter.csv        source,e_A,e_B
//   pareto_corner.csv  e_A,e_B            (scatter point minimising max(e_A, e_B))

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxahp/classical.hpp"
#include "maxahp/error.hpp"
#include "maxahp/multi.hpp"
#include "maxahp/pareto.hpp"
#include "maxahp/problem.hpp"
#include "maxahp/ranking.hpp"
#include "maxahp/tropical.hpp"

namespace maxahp {

struct ReportOptions {
  std::size_t scatter_samples = 200;  // per source
  std::uint64_t seed = 7;
  double spread = 1.0;  // log-space std. deviation of random points
  ParetoOptions pareto{};
};

struct ScatterPoint {
  std::string source;
  double e_a = 0.0;
  double e_b = 0.0;
};

struct ReportTables {
  std::string weights_csv;
  std::string errors_csv;
  std::string scatter_csv;        // empty when m < 2
  std::string pareto_corner_csv;  // empty when m < 2
  std::vector<ScatterPoint> scatter;
  std::optional<ScatterPoint> pareto_corner;
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline std::size_t rank_position(const Ranking& r, std::size_t alt) {
  for (std::size_t c = 0; c < r.classes.size(); ++c)
    if (std::find(r.classes[c].begin(), r.classes[c].end(), alt) != r.classes[c].end()) return c + 1;
  return 0;
}

}  // namespace detail

/// Scatter of (e_A, e_B) for the first two matrices: points of C_A and C_B
/// (random positive vectors closed under the Kleene star of A/mu(A),
/// resp. B/mu(B)), random interior points, and the min-max point.
inline std::vector<ScatterPoint> error_scatter(const MaxMatrix& a, const MaxMatrix& b, const PositiveVector& minmax,
                                               const ReportOptions& opts) {
  const std::size_t n = a.size();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, opts.spread);
  auto random_vector = [&] {
    std::vector<double> x(n);
    for (double& v : x) v = std::exp(normal(rng));
    return x;
  };
  const MaxMatrix star_a = kleene_star(a.scaled(1.0 / cycle_mean(a)), 1e-9);
  const MaxMatrix star_b = kleene_star(b.scaled(1.0 / cycle_mean(b)), 1e-9);

  std::vector<ScatterPoint> pts;
  auto add = [&](const char* source, std::span<const double> x) {
    pts.push_back({source, relative_error(a, x), relative_error(b, x)});
  };
  for (std::size_t s = 0; s < opts.scatter_samples; ++s) add("C_A", max_matvec(star_a, random_vector()));
  for (std::size_t s = 0; s < opts.scatter_samples; ++s) add("C_B", max_matvec(star_b, random_vector()));
  for (std::size_t s = 0; s < opts.scatter_samples; ++s) add("interior", random_vector());
  add("minmax", minmax.span());
  return pts;
}

inline ScatterPoint pareto_corner(const std::vector<ScatterPoint>& pts) {
  return *std::min_element(pts.begin(), pts.end(), [](const ScatterPoint& p, const ScatterPoint& q) {
    const double mp = std::max(p.e_a, p.e_b), mq = std::max(q.e_a, q.e_b);
    if (mp != mq) return mp < mq;
    return p.e_a + p.e_b < q.e_a + q.e_b;
  });
}

inline ReportTables build_report(const Problem& p, const ReportOptions& opts = {}) {
  const auto ms = p.plain_matrices();
  std::vector<std::pair<std::string, PositiveVector>> methods;

  if (p.criteria) methods.emplace_back("classical", classical_ahp(p).weights);
  const MultiResult multi = minmax_solution(ms, p.tol);
  methods.emplace_back("minmax", multi.minmax);
  if (multi.global_opt) methods.emplace_back("global_optimum", *multi.global_opt);
  const auto pareto = pareto_point(p, std::nullopt, opts.pareto);
  for (std::size_t k = 0; k < pareto.size(); ++k) methods.emplace_back("pareto_" + std::to_string(k + 1), pareto[k].point);
  for (std::size_t k = 0; k < p.m(); ++k)
    methods.emplace_back("max_eigenvector:" + p.criteria_names[k], max_eigenvector(ms[k], p.tol.algebraic));

  ReportTables t;
  std::ostringstream w, e;
  w << "method,alternative,weight,rank\n";
  e << "method,criterion,relative_error\n";
  for (const auto& [name, vec] : methods) {
    const Ranking r = rank_alternatives(vec, p.tol.tie);
    for (std::size_t i = 0; i < p.n(); ++i)
      w << detail::csv_field(name) << ',' << detail::csv_field(p.alternatives[i]) << ',' << detail::num(vec[i]) << ','
        << detail::rank_position(r, i) << '\n';
    for (std::size_t k = 0; k < p.m(); ++k)
      e << detail::csv_field(name) << ',' << detail::csv_field(p.criteria_names[k]) << ','
        << detail::num(relative_error(ms[k], vec)) << '\n';
  }
  t.weights_csv = w.str();
  t.errors_csv = e.str();

  if (p.m() >= 2) {
    t.scatter = error_scatter(ms[0], ms[1], multi.minmax, opts);
    std::ostringstream s;
    s << "source,e_A,e_B\n";
    for (const auto& pt : t.scatter) s << pt.source << ',' << detail::num(pt.e_a) << ',' << detail::num(pt.e_b) << '\n';
    t.scatter_csv = s.str();
    t.pareto_corner = pareto_corner(t.scatter);
    t.pareto_corner_csv = "e_A,e_B\n" + detail::num(t.pareto_corner->e_a) + ',' + detail::num(t.pareto_corner->e_b) + '\n';
  }
  return t;
}

/// Writes the report tables into `dir` (created if needed); returns the paths.
inline std::vector<std::string> write_report(const ReportTables& t, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const char* file, const std::string& body) {
    if (body.empty()) return;
    const auto path = (std::filesystem::path(dir) / file).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::SchemaError, "cannot write '" + path + "'");
    out << body;
    written.push_back(path);
  };
  put("weights.csv", t.weights_csv);
  put("errors.csv", t.errors_csv);
  put("scatter.csv", t.scatter_csv);
  put("pareto_corner.csv", t.pareto_corner_csv);
  return written;
}

}  // namespace maxahp
