#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxahp/error.hpp"
#include "maxahp/matrix.hpp"
#include "maxahp/sr_matrix.hpp"

namespace maxahp {

/// A multi-criteria decision problem: one SR matrix per criterion over the same
/// n alternatives, optionally with a criteria comparison matrix or explicit
/// positive criteria weights.
struct Problem {
  std::vector<std::string> alternatives;
  std::vector<std::string> criteria_names;
  std::vector<SRMatrix> matrices;
  std::optional<SRMatrix> criteria;
  std::optional<std::vector<double>> alpha;
  Tolerances tol;

  std::size_t n() const { return alternatives.size(); }
  std::size_t m() const { return matrices.size(); }

  std::vector<MaxMatrix> plain_matrices() const {
    std::vector<MaxMatrix> out;
    out.reserve(matrices.size());
    for (const auto& a : matrices) out.push_back(a.matrix());
    return out;
  }
};

/// Checks the structural invariants of a problem and fills default names.
inline Problem make_problem(std::vector<SRMatrix> matrices, std::vector<std::string> alternatives = {},
                            std::optional<SRMatrix> criteria = std::nullopt,
                            std::optional<std::vector<double>> alpha = std::nullopt, Tolerances tol = {}) {
  if (matrices.empty()) throw Error(ErrorCode::SchemaError, "problem needs at least one criterion matrix");
  const std::size_t n = matrices.front().size();
  for (const auto& a : matrices) require_same_size(a.size(), n, "problem matrices");
  if (alternatives.empty()) alternatives = default_labels(n);
  require_same_size(alternatives.size(), n, "problem alternatives");
  if (criteria) require_same_size(criteria->size(), matrices.size(), "criteria matrix");
  if (alpha) {
    require_same_size(alpha->size(), matrices.size(), "criteria weights");
    for (double a : *alpha)
      if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::InfeasibleAlpha, "criteria weights must be positive");
  }
  Problem p;
  p.alternatives = std::move(alternatives);
  p.criteria_names = criteria ? criteria->labels() : default_labels(matrices.size());
  p.matrices = std::move(matrices);
  p.criteria = std::move(criteria);
  p.alpha = std::move(alpha);
  p.tol = tol;
  return p;
}

}  // namespace maxahp
