#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxahp {

enum class ErrorCode {
  DimensionMismatch,
  InvalidEntry,
  DimensionTooLarge,
  SpectralRadiusExceedsOne,
  ZeroSpectralRadius,
  ZeroMatrix,
  NotIrreducible,
  NotPositive,
  DiagonalNotOne,
  ReciprocityViolated,
  NoConvergence,
  MissingCriteria,
  AllZero,
  ExplosionGuard,
  SolverFailure,
  InfeasibleAlpha,
  MalformedNumber,
  DivisionByZero,
  SchemaError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::InvalidEntry: return "invalid_entry";
    case ErrorCode::DimensionTooLarge: return "dimension_too_large";
    case ErrorCode::SpectralRadiusExceedsOne: return "spectral_radius_exceeds_one";
    case ErrorCode::ZeroSpectralRadius: return "zero_spectral_radius";
    case ErrorCode::ZeroMatrix: return "zero_matrix";
    case ErrorCode::NotIrreducible: return "not_irreducible";
    case ErrorCode::NotPositive: return "not_positive";
    case ErrorCode::DiagonalNotOne: return "diagonal_not_one";
    case ErrorCode::ReciprocityViolated: return "reciprocity_violated";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::MissingCriteria: return "missing_criteria";
    case ErrorCode::AllZero: return "all_zero";
    case ErrorCode::ExplosionGuard: return "explosion_guard";
    case ErrorCode::SolverFailure: return "solver_failure";
    case ErrorCode::InfeasibleAlpha: return "infeasible_alpha";
    case ErrorCode::MalformedNumber: return "malformed_number";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::SchemaError: return "schema_error";
  }
  return "unknown";
}

/// Coarse grouping used for CLI exit codes and service status classes.
enum class ErrorClass { InvalidInput, SRViolation, Infeasible, Numerical };

inline ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositive:
    case ErrorCode::DiagonalNotOne:
    case ErrorCode::ReciprocityViolated:
      return ErrorClass::SRViolation;
    case ErrorCode::SpectralRadiusExceedsOne:
    case ErrorCode::ZeroSpectralRadius:
    case ErrorCode::ZeroMatrix:
    case ErrorCode::NotIrreducible:
    case ErrorCode::AllZero:
    case ErrorCode::ExplosionGuard:
    case ErrorCode::InfeasibleAlpha:
      return ErrorClass::Infeasible;
    case ErrorCode::NoConvergence:
    case ErrorCode::SolverFailure:
      return ErrorClass::Numerical;
    default:
      return ErrorClass::InvalidInput;
  }
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maxahp
