// Error taxonomy and default numeric tolerances shared across the library.
//
// Every failure mode that callers are expected to branch on gets its own
// exception type; anything else surfaces as a plain InputError.  The CLI maps
// these onto process exit codes, so keep the hierarchy flat and explicit.

#ifndef LIEKAHLER_ERRORS_HPP
#define LIEKAHLER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liekahler {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad documents, inconsistent dimensions, invalid parameters.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

// A metric (or candidate metric) failed its positive-definiteness check.
class NotPositiveDefiniteError : public InputError {
 public:
  explicit NotPositiveDefiniteError(const std::string& msg) : InputError(msg) {}
};

// Ricci tensor has a single eigenvalue cluster, so there is nothing to split.
class EinsteinInputError : public Error {
 public:
  explicit EinsteinInputError(const std::string& msg) : Error(msg) {}
};

// Ricci tensor has three or more eigenvalue clusters; the two-block
// deformation theory does not apply.
class TooManyEigenvaluesError : public Error {
 public:
  explicit TooManyEigenvaluesError(const std::string& msg) : Error(msg) {}
};

// Einstein normalization needs both Ricci eigenvalues of equal sign.
class NotSameSignError : public Error {
 public:
  explicit NotSameSignError(const std::string& msg) : Error(msg) {}
};

// A construction's standing hypothesis failed on the given input (e.g. a
// root-space that must vanish is nonzero, or the closedness test fails).
class HypothesisFailedError : public Error {
 public:
  explicit HypothesisFailedError(const std::string& msg) : Error(msg) {}
};

// The input violates a structural assumption rather than a numeric tolerance:
// non-solvable algebra, non-diagonalizable ad-action, bad root pattern, ...
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& msg) : Error(msg) {}
};

// Default tolerances.  Residuals are always compared in relative terms: the
// raw residual is divided by a scale derived from the magnitudes of the
// inputs (never smaller than 1), so flat/zero cases do not divide by zero.
namespace tols {

// Algebraic axioms: Jacobi identity, antisymmetry, torsion, Bianchi, ...
inline constexpr double kAxiom = 1e-9;

// Exact-identity checks on operators built from a single geometry
// (J^2 = -1, orthogonality, projector idempotence, ...).
inline constexpr double kIdentity = 1e-9;

// Curvature identities that chain several derived quantities together.
inline constexpr double kDerivedIdentity = 1e-8;

// Positive-definiteness margin for metrics (smallest eigenvalue must exceed
// this times the largest).
inline constexpr double kPositiveDefinite = 1e-12;

// Eigenvalues closer than this (relative) are merged into one cluster.
inline constexpr double kEigenCluster = 1e-6;

// Distinct eigenvalue clusters must be separated by at least this (relative).
inline constexpr double kEigenGap = 1e-4;

// Hard cap on the algebra dimension; everything here is desk-scale.
inline constexpr int kMaxDim = 32;

}  // namespace tols

}  // namespace liekahler

#endif  // LIEKAHLER_ERRORS_HPP
