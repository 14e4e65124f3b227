#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace liftlab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using SpMatrix = Eigen::SparseMatrix<cplx>;

enum class ErrorKind {
  DegreeOutOfRange,
  NotPSD,
  AmbientMismatch,
  NotInvariant,
  DimensionMismatch,
  NotContractiveAtTruncation,
  StabilizationFailure,
  InconsistentWithTheorem,
  DefectMismatch,
  NotMinimal,
  NotInDisk,
  NotIsometry,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

/// All library failures throw this; `kind()` carries the taxonomy the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

/// Global relative rank tolerance. Reads LIFTLAB_TOL once; falls back to 1e-10.
double default_rank_tol();
void set_default_rank_tol(double tol);

/// Default strict margin used by symbol predicates.
inline constexpr double kPredicateTol = 1e-9;
/// Eigenvalues of I - M*M at or below this are treated as zero when factoring the defect.
inline constexpr double kDeltaFloor = 1e-10;
/// Negative eigenvalues down to -kClipTol are accepted as rounding of a PSD matrix.
inline constexpr double kClipTol = 1e-9;

namespace detail {

/// Orthonormal basis of the column space of `a`, singular values below tol * max(sigma_max, floorScale) dropped.
CMatrix range_basis(const CMatrix& a, double tol, double floorScale = 0.0);
/// Orthonormal basis of the null space of `a` (right singular vectors with sigma <= tol * scale).
/// `scale` defaults to max(1, sigma_max).
CMatrix null_basis(const CMatrix& a, double tol, double scale = -1.0);
/// Multiply each column by a unimodular factor making its largest-modulus entry real positive.
void pin_column_phases(CMatrix& m);
double max_abs(const CMatrix& m);

}  // namespace detail
}  // namespace liftlab
