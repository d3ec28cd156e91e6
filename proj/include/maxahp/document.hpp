#pragma once

// JSON documents for matrices and problems.
//
// Entries are kept as text so that fractions such as "1/7" survive a
// load/save cycle unchanged; they are converted to doubles only when a
// MaxMatrix is built.
//
// Matrix document:
//   { "name": "cost", "labels": ["a", "b"], "entries": [["1", "3"], ["1/3", "1"]] }
// Problem document:
//   { "alternatives": [...],
//     "criteria": { "labels": [...], "entries": [[...]] }   or   { "weights": [1, 2.5] },
//     "matrices": [ <matrix document>, ... ],
//     "tolerances": { "algebraic": 1e-9, "global": 1e-6, "tie": 1e-3 } }

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "maxahp/error.hpp"
#include "maxahp/matrix.hpp"
#include "maxahp/problem.hpp"
#include "maxahp/sr_matrix.hpp"

namespace maxahp {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_decimal(std::string_view tok, std::string_view whole) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
    throw Error(ErrorCode::MalformedNumber, "malformed number '" + std::string(whole) + "'");
  return v;
}

}  // namespace detail

/// Parses a decimal ("0.25", "3") or a quotient "p/q" of decimals.
inline double parse_scalar(std::string_view token) {
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) return detail::parse_decimal(token, token);
  if (token.find('/', slash + 1) != std::string_view::npos)
    throw Error(ErrorCode::MalformedNumber, "malformed number '" + std::string(token) + "'");
  const double p = detail::parse_decimal(token.substr(0, slash), token);
  const double q = detail::parse_decimal(token.substr(slash + 1), token);
  if (q == 0.0) throw Error(ErrorCode::DivisionByZero, "division by zero in '" + std::string(token) + "'");
  return p / q;
}

struct MatrixDocument {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> entries;

  std::size_t n() const { return entries.size(); }

  MaxMatrix to_matrix() const {
    const std::size_t n = entries.size();
    if (n == 0) throw Error(ErrorCode::SchemaError, label() + ": matrix has no rows");
    MaxMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (entries[i].size() != n)
        throw Error(ErrorCode::SchemaError, label() + ": row " + std::to_string(i + 1) + " has " +
                                                std::to_string(entries[i].size()) + " entries, expected " +
                                                std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) {
        const double v = parse_scalar(entries[i][j]);
        if (v < 0.0)
          throw Error(ErrorCode::InvalidEntry, label() + ": negative entry at (" + std::to_string(i + 1) + "," +
                                                   std::to_string(j + 1) + ")");
        m.set(i, j, v);
      }
    }
    return m;
  }

  std::string label() const { return name.empty() ? std::string("matrix") : "matrix '" + name + "'"; }
};

struct ProblemDocument {
  std::vector<std::string> alternatives;
  std::optional<MatrixDocument> criteria_matrix;
  std::optional<std::vector<std::string>> criteria_weights;
  std::vector<MatrixDocument> matrices;
  std::optional<Tolerances> tolerances;
};

namespace detail {

inline std::string entry_text(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw Error(ErrorCode::SchemaError, where + ": entries must be strings or numbers");
}

inline std::vector<std::string> string_list(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorCode::SchemaError, where + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw Error(ErrorCode::SchemaError, where + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline MatrixDocument matrix_document_from_json(const nlohmann::json& j, const std::string& where = "matrix") {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, where + " must be an object");
  MatrixDocument d;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw Error(ErrorCode::SchemaError, where + ".name must be a string");
    d.name = j["name"].get<std::string>();
  }
  if (!j.contains("entries") || !j["entries"].is_array())
    throw Error(ErrorCode::SchemaError, where + ".entries must be an array of rows");
  for (const auto& row : j["entries"]) {
    if (!row.is_array()) throw Error(ErrorCode::SchemaError, where + ".entries rows must be arrays");
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(detail::entry_text(e, where));
    d.entries.push_back(std::move(r));
  }
  const std::size_t n = d.entries.size();
  if (n == 0) throw Error(ErrorCode::SchemaError, where + ".entries is empty");
  for (const auto& r : d.entries)
    if (r.size() != n) throw Error(ErrorCode::SchemaError, where + " is not square");
  if (j.contains("n")) {
    if (!j["n"].is_number_unsigned() || j["n"].get<std::size_t>() != n)
      throw Error(ErrorCode::SchemaError, where + ".n does not match the number of rows");
  }
  if (j.contains("labels")) {
    d.labels = detail::string_list(j["labels"], where + ".labels");
    if (d.labels.size() != n) throw Error(ErrorCode::SchemaError, where + ".labels has the wrong length");
  }
  return d;
}

inline nlohmann::json to_json(const MatrixDocument& d) {
  nlohmann::json j = nlohmann::json::object();
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.labels.empty()) j["labels"] = d.labels;
  j["entries"] = d.entries;
  return j;
}

inline Tolerances tolerances_from_json(const nlohmann::json& j, Tolerances base = {}) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "tolerances must be an object");
  auto read = [&](const char* key, double& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number() || !(j[key].get<double>() >= 0.0))
      throw Error(ErrorCode::SchemaError, std::string("tolerances.") + key + " must be a nonnegative number");
    out = j[key].get<double>();
  };
  read("algebraic", base.algebraic);
  read("global", base.global);
  read("tie", base.tie);
  return base;
}

inline nlohmann::json to_json(const Tolerances& t) {
  return {{"algebraic", t.algebraic}, {"global", t.global}, {"tie", t.tie}};
}

inline ProblemDocument problem_document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::SchemaError, "problem document must be an object");
  ProblemDocument d;
  if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty())
    throw Error(ErrorCode::SchemaError, "problem.matrices must be a nonempty array");
  for (std::size_t k = 0; k < j["matrices"].size(); ++k)
    d.matrices.push_back(matrix_document_from_json(j["matrices"][k], "matrices[" + std::to_string(k) + "]"));
  if (j.contains("alternatives")) d.alternatives = detail::string_list(j["alternatives"], "problem.alternatives");
  if (j.contains("criteria")) {
    const auto& c = j["criteria"];
    if (!c.is_object()) throw Error(ErrorCode::SchemaError, "problem.criteria must be an object");
    if (c.contains("weights") == c.contains("entries"))
      throw Error(ErrorCode::SchemaError, "problem.criteria needs exactly one of 'entries' or 'weights'");
    if (c.contains("entries")) {
      d.criteria_matrix = matrix_document_from_json(c, "criteria");
    } else {
      if (!c["weights"].is_array()) throw Error(ErrorCode::SchemaError, "criteria.weights must be an array");
      std::vector<std::string> w;
      for (const auto& e : c["weights"]) w.push_back(detail::entry_text(e, "criteria.weights"));
      d.criteria_weights = std::move(w);
    }
  }
  if (j.contains("tolerances")) d.tolerances = tolerances_from_json(j["tolerances"]);
  return d;
}

inline nlohmann::json to_json(const ProblemDocument& d) {
  nlohmann::json j = nlohmann::json::object();
  if (!d.alternatives.empty()) j["alternatives"] = d.alternatives;
  if (d.criteria_matrix) j["criteria"] = to_json(*d.criteria_matrix);
  if (d.criteria_weights) j["criteria"] = {{"weights", *d.criteria_weights}};
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : d.matrices) ms.push_back(to_json(m));
  j["matrices"] = std::move(ms);
  if (d.tolerances) j["tolerances"] = to_json(*d.tolerances);
  return j;
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, origin + ": invalid JSON: " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Validates one matrix document as an SR matrix, naming the document in
/// the error.
inline SRMatrix sr_from_document(const MatrixDocument& d, double tol, std::vector<std::string> fallback_labels = {}) {
  const MaxMatrix m = d.to_matrix();
  try {
    return validate_sr(m, d.labels.empty() ? std::move(fallback_labels) : d.labels, tol);
  } catch (const SRValidationError& e) {
    throw SRValidationError(e.code(), d.label() + ": " + e.what(), e.entries());
  }
}

/// Builds a validated Problem; every matrix is checked against the SR laws.
inline Problem problem_from_document(const ProblemDocument& d, std::optional<Tolerances> override_tol = std::nullopt) {
  const Tolerances tol = override_tol ? *override_tol : d.tolerances.value_or(Tolerances{});
  std::vector<SRMatrix> ms;
  std::vector<std::string> alts = d.alternatives;
  for (const auto& md : d.matrices) {
    if (!alts.empty() && md.n() != alts.size())
      throw Error(ErrorCode::SchemaError, md.label() + " has dimension " + std::to_string(md.n()) + " but there are " +
                                              std::to_string(alts.size()) + " alternatives");
    ms.push_back(sr_from_document(md, tol.algebraic, alts));
  }
  std::optional<SRMatrix> criteria;
  std::optional<std::vector<double>> alpha;
  if (d.criteria_matrix) {
    if (d.criteria_matrix->n() != ms.size())
      throw Error(ErrorCode::SchemaError, "criteria matrix is " + std::to_string(d.criteria_matrix->n()) + "x" +
                                              std::to_string(d.criteria_matrix->n()) + " but there are " +
                                              std::to_string(ms.size()) + " criteria");
    std::vector<std::string> names;
    for (std::size_t k = 0; k < d.matrices.size(); ++k)
      names.push_back(d.matrices[k].name.empty() ? std::to_string(k + 1) : d.matrices[k].name);
    MatrixDocument cd = *d.criteria_matrix;
    if (cd.name.empty()) cd.name = "criteria";
    criteria = sr_from_document(cd, tol.algebraic, names);
  }
  if (d.criteria_weights) {
    if (d.criteria_weights->size() != ms.size())
      throw Error(ErrorCode::SchemaError, "criteria.weights has " + std::to_string(d.criteria_weights->size()) +
                                              " entries but there are " + std::to_string(ms.size()) + " criteria");
    std::vector<double> w;
    for (const auto& t : *d.criteria_weights) w.push_back(parse_scalar(t));
    alpha = std::move(w);
  }
  Problem p = make_problem(std::move(ms), std::move(alts), std::move(criteria), std::move(alpha), tol);
  if (!p.criteria) {
    p.criteria_names.clear();
    for (std::size_t k = 0; k < d.matrices.size(); ++k)
      p.criteria_names.push_back(d.matrices[k].name.empty() ? std::to_string(k + 1) : d.matrices[k].name);
  }
  return p;
}

inline ProblemDocument load_problem_document(const std::string& path) {
  return problem_document_from_json(parse_json_text(read_text_file(path), path));
}

inline Problem load_problem(const std::string& path, std::optional<Tolerances> override_tol = std::nullopt) {
  return problem_from_document(load_problem_document(path), override_tol);
}

inline MatrixDocument load_matrix_document(const std::string& path) {
  return matrix_document_from_json(parse_json_text(read_text_file(path), path));
}

inline void save_problem_document(const ProblemDocument& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::SchemaError, "cannot write '" + path + "'");
  out << to_json(d).dump(2) << '\n';
}

}  // namespace maxahp
