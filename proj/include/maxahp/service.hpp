#pragma once

// Stateless request handling for the HTTP service. handle_request is a pure
// function of (method, path, body); the HTTP layer in http_server.hpp only
// forwards to it.
//
//   POST /api/validate   matrix or problem document -> SR diagnostics
//   POST /api/analyze    matrix document            -> spectral profile
//   POST /api/multi      problem document           -> min-max / global optimum
//   POST /api/pareto     problem document           -> Pareto points
//   POST /api/classical  problem document           -> Perron pipeline
//   GET  /api/health                                -> name and version

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maxahp/classical.hpp"
#include "maxahp/document.hpp"
#include "maxahp/error.hpp"
#include "maxahp/multi.hpp"
#include "maxahp/pareto.hpp"
#include "maxahp/problem.hpp"
#include "maxahp/ranking.hpp"
#include "maxahp/tropical.hpp"
#include "maxahp/version.hpp"

namespace maxahp::api {

using nlohmann::json;

struct ServiceConfig {
  std::size_t max_n = 64;
  std::size_t max_m = 32;
};

struct ApiResponse {
  int status = 200;
  json body;

  std::string text() const { return body.dump(); }
};

inline json vec_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }
inline json vec_json(const PositiveVector& v) { return vec_json(v.span()); }

inline json matrix_json(const MaxMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(vec_json(m.row(i)));
  return rows;
}

inline json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const auto& [i, j] : edges) a.push_back({i + 1, j + 1});
  return a;
}

inline json error_body(const std::string& code, const std::string& detail_code, const std::string& message,
                       const std::vector<Edge>& entries = {}) {
  json e = {{"code", code}, {"detail_code", detail_code}, {"message", message}};
  if (!entries.empty()) e["entries"] = edges_json(entries);
  return {{"error", e}};
}

inline ApiResponse error_response(const Error& err) {
  std::vector<Edge> entries;
  if (const auto* sr = dynamic_cast<const SRValidationError*>(&err)) entries = sr->entries();
  const std::string detail(to_string(err.code()));
  if (err.code() == ErrorCode::DimensionTooLarge) return {413, error_body("too_large", detail, err.what())};
  switch (classify(err.code())) {
    case ErrorClass::InvalidInput: return {400, error_body("schema", detail, err.what(), entries)};
    case ErrorClass::SRViolation: return {422, error_body("sr_violation", detail, err.what(), entries)};
    case ErrorClass::Infeasible: return {409, error_body("infeasible", detail, err.what(), entries)};
    case ErrorClass::Numerical: return {500, error_body("numeric", detail, err.what(), entries)};
  }
  return {500, error_body("numeric", detail, err.what())};
}

namespace detail {

inline void check_size(std::size_t n, std::size_t m, const ServiceConfig& cfg) {
  if (n > cfg.max_n || m > cfg.max_m)
    throw Error(ErrorCode::DimensionTooLarge, "request exceeds the size limit (n <= " + std::to_string(cfg.max_n) +
                                                  ", m <= " + std::to_string(cfg.max_m) + ")");
}

inline Problem problem_from_body(const json& body, const ServiceConfig& cfg) {
  const ProblemDocument doc = problem_document_from_json(body);
  check_size(doc.matrices.front().n(), doc.matrices.size(), cfg);
  return problem_from_document(doc);
}

inline json validate_one(const MatrixDocument& d, double tol) {
  json r = {{"name", d.name}, {"n", d.n()}};
  try {
    (void)validate_sr(d.to_matrix(), d.labels, tol);
    r["valid"] = true;
  } catch (const SRValidationError& e) {
    r["valid"] = false;
    r["code"] = std::string(to_string(e.code()));
    r["message"] = e.what();
    r["entries"] = edges_json(e.entries());
  }
  return r;
}

inline ApiResponse handle_validate(const json& body, const ServiceConfig& cfg) {
  std::vector<MatrixDocument> docs;
  Tolerances tol;
  if (body.is_object() && body.contains("matrices")) {
    const ProblemDocument d = problem_document_from_json(body);
    check_size(d.matrices.front().n(), d.matrices.size(), cfg);
    docs = d.matrices;
    if (d.criteria_matrix) {
      MatrixDocument c = *d.criteria_matrix;
      if (c.name.empty()) c.name = "criteria";
      docs.push_back(std::move(c));
    }
    tol = d.tolerances.value_or(Tolerances{});
  } else {
    docs.push_back(matrix_document_from_json(body));
    check_size(docs.front().n(), 1, cfg);
    if (body.contains("tolerances")) tol = tolerances_from_json(body["tolerances"]);
  }
  json out = {{"matrices", json::array()}, {"tolerances", to_json(tol)}};
  bool all = true;
  for (const auto& d : docs) {
    json r = validate_one(d, tol.algebraic);
    all = all && r["valid"].get<bool>();
    out["matrices"].push_back(std::move(r));
  }
  out["valid"] = all;
  return {200, out};
}

inline ApiResponse handle_analyze(const json& body, const ServiceConfig& cfg) {
  const MatrixDocument d = matrix_document_from_json(body);
  check_size(d.n(), 1, cfg);
  const Tolerances tol = body.contains("tolerances") ? tolerances_from_json(body["tolerances"]) : Tolerances{};
  const MaxMatrix a = d.to_matrix();
  const SpectralProfile prof = spectral_profile(a, tol.algebraic);
  const bool irreducible = is_irreducible(a);

  json basis = json::array();
  for (std::size_t k = 0; k < prof.basis.size(); ++k)
    basis.push_back({{"index", prof.basis_indices[k] + 1}, {"vector", vec_json(prof.basis[k])}});
  std::vector<std::size_t> nodes;
  for (std::size_t i : prof.critical.nodes) nodes.push_back(i + 1);
  json out = {
      {"n", a.size()},
      {"mu", prof.mu},
      {"irreducible", irreducible},
      {"unique_direction", prof.unique_direction},
      {"critical",
       {{"nodes", nodes}, {"edges", edges_json(prof.critical.edges)}, {"anticritical", edges_json(prof.critical.anticritical)}}},
      {"kleene_star", matrix_json(prof.star)},
      {"basis", basis},
      {"principal_subeigenvector", vec_json(principal_subeigenvector(a, tol.algebraic))},
      {"max_eigenvector", irreducible ? vec_json(max_eigenvector(a, tol.algebraic)) : json(nullptr)},
      {"tolerances", to_json(tol)},
  };
  return {200, out};
}

inline ApiResponse handle_multi(const json& body, const ServiceConfig& cfg) {
  const Problem p = problem_from_body(body, cfg);
  const MultiResult r = minmax_solution(p);
  if (body.value("require_global", false) && !r.global_opt) {
    return {409, error_body("infeasible", "no_global_optimum",
                            "no common subeigenvector: mu of the normalised aggregate is " +
                                std::to_string(r.mu_hat_normalized))};
  }
  json errors = json::array();
  for (std::size_t k = 0; k < p.m(); ++k) errors.push_back({{"criterion", p.criteria_names[k]}, {"value", r.errors[k]}});
  json out = {
      {"mu_hat", r.mu_hat},
      {"mu_hat_normalized", r.mu_hat_normalized},
      {"global_optimum",
       {{"exists", r.global_opt.has_value()}, {"vector", r.global_opt ? vec_json(*r.global_opt) : json(nullptr)}}},
      {"minmax", vec_json(r.minmax)},
      {"minmax_unique", r.unique_minmax},
      {"ranking", rank_alternatives(r.minmax, p.tol.tie).to_string()},
      {"errors", errors},
      {"aggregate", matrix_json(r.s)},
      {"tolerances", to_json(p.tol)},
  };
  return {200, out};
}

inline ApiResponse handle_pareto(const json& body, const ServiceConfig& cfg) {
  const Problem p = problem_from_body(body, cfg);
  ParetoOptions opts;
  std::optional<std::vector<double>> alpha;
  if (body.contains("options")) {
    const auto& o = body["options"];
    if (!o.is_object()) throw Error(ErrorCode::SchemaError, "options must be an object");
    if (o.contains("alpha")) {
      if (!o["alpha"].is_array()) throw Error(ErrorCode::SchemaError, "options.alpha must be an array");
      std::vector<double> a;
      for (const auto& v : o["alpha"]) {
        if (!v.is_number()) throw Error(ErrorCode::SchemaError, "options.alpha must contain numbers");
        a.push_back(v.get<double>());
      }
      alpha = std::move(a);
    }
    if (o.contains("starts")) {
      if (!o["starts"].is_number_unsigned() || o["starts"].get<std::size_t>() > 256)
        throw Error(ErrorCode::SchemaError, "options.starts must be an integer in [0, 256]");
      opts.extra_starts = o["starts"].get<std::size_t>();
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) throw Error(ErrorCode::SchemaError, "options.seed must be a nonnegative integer");
      opts.seed = o["seed"].get<std::uint64_t>();
    }
  }
  const std::vector<double> used_alpha = alpha ? *alpha : default_alpha(p);
  const auto results = pareto_point(p, used_alpha, opts);
  json points = json::array();
  for (const auto& r : results) {
    double worst = 0.0;
    for (double e : r.objective_values) worst = std::max(worst, e);
    points.push_back({
        {"point", vec_json(r.point)},
        {"objective_values", vec_json(r.objective_values)},
        {"weighted_objective", r.weighted_objective},
        {"max_error", worst},
        {"ranking", r.ranking.to_string()},
        {"start_index", r.start_index},
        {"certificate",
         {{"samples", r.certificate.samples},
          {"weakly_dominated", r.certificate.weakly_dominated},
          {"strictly_dominated", r.certificate.strictly_dominated},
          {"polish_steps", r.certificate.polish_steps}}},
    });
  }
  json out = {
      {"alpha", vec_json(used_alpha)},
      {"mu_hat", gen_spectral_radius(p.plain_matrices())},
      {"points", points},
      {"seed", opts.seed},
      {"starts", opts.extra_starts},
      {"tolerances", to_json(p.tol)},
  };
  return {200, out};
}

inline ApiResponse handle_classical(const json& body, const ServiceConfig& cfg) {
  const Problem p = problem_from_body(body, cfg);
  const ClassicalResult r = classical_ahp(p);
  json per = json::array();
  for (std::size_t k = 0; k < p.m(); ++k)
    per.push_back({{"criterion", p.criteria_names[k]},
                   {"vector", vec_json(r.per_criterion[k])},
                   {"ranking", r.per_criterion_rankings[k].to_string()}});
  json out = {
      {"criteria_weights", vec_json(r.criteria_weights)},
      {"per_criterion", per},
      {"weights", vec_json(r.weights)},
      {"ranking", r.ranking.to_string()},
      {"tolerances", to_json(p.tol)},
  };
  return {200, out};
}

}  // namespace detail

inline ApiResponse handle_request(const std::string& method, const std::string& path, const std::string& body,
                                  const ServiceConfig& cfg = {}) {
  static const std::vector<std::string> post_paths = {"/api/validate", "/api/analyze", "/api/multi", "/api/pareto",
                                                      "/api/classical"};
  try {
    if (path == "/api/health") {
      if (method != "GET") return {405, error_body("method_not_allowed", "method_not_allowed", "use GET")};
      return {200, {{"status", "ok"}, {"name", "maxahp"}, {"version", kVersion}}};
    }
    if (std::find(post_paths.begin(), post_paths.end(), path) == post_paths.end())
      return {404, error_body("not_found", "not_found", "unknown endpoint " + path)};
    if (method != "POST") return {405, error_body("method_not_allowed", "method_not_allowed", "use POST")};

    const json doc = parse_json_text(body, "request body");
    if (path == "/api/validate") return detail::handle_validate(doc, cfg);
    if (path == "/api/analyze") return detail::handle_analyze(doc, cfg);
    if (path == "/api/multi") return detail::handle_multi(doc, cfg);
    if (path == "/api/pareto") return detail::handle_pareto(doc, cfg);
    return detail::handle_classical(doc, cfg);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const json::exception& e) {
    return {400, error_body("schema", "schema_error", e.what())};
  }
}

}  // namespace maxahp::api
