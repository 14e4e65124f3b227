#include "liftlab/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace liftlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotContractiveAtTruncation: return "NotContractiveAtTruncation";
    case ErrorKind::StabilizationFailure: return "StabilizationFailure";
    case ErrorKind::InconsistentWithTheorem: return "InconsistentWithTheorem";
    case ErrorKind::DefectMismatch: return "DefectMismatch";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NotInDisk: return "NotInDisk";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

namespace {

double initial_tol() {
  if (const char* env = std::getenv("LIFTLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && v < 1.0) return v;
  }
  return 1e-10;
}

std::atomic<double>& tol_slot() {
  static std::atomic<double> slot{initial_tol()};
  return slot;
}

}  // namespace

double default_rank_tol() { return tol_slot().load(); }
void set_default_rank_tol(double tol) { tol_slot().store(tol); }

namespace detail {

CMatrix range_basis(const CMatrix& a, double tol, double floorScale) {
  if (a.cols() == 0 || a.rows() == 0) return CMatrix(a.rows(), 0);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return CMatrix(a.rows(), 0);
  Eigen::Index rank = 0;
  const double scale = std::max(s(0), floorScale);
  while (rank < s.size() && s(rank) > tol * scale) ++rank;
  CMatrix u = svd.matrixU().leftCols(rank);
  pin_column_phases(u);
  return u;
}

CMatrix null_basis(const CMatrix& a, double tol, double scale) {
  const Eigen::Index n = a.cols();
  if (n == 0) return CMatrix(0, 0);
  if (a.rows() == 0) return CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  if (scale < 0.0) scale = std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol * scale) ++rank;
  CMatrix v = svd.matrixV().rightCols(n - rank);
  pin_column_phases(v);
  return v;
}

void pin_column_phases(CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index best = 0;
    double bestAbs = -1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      // Ties resolved toward the first index for determinism.
      const double v = std::abs(m(r, c));
      if (v > bestAbs * (1.0 + 1e-12)) {
        bestAbs = v;
        best = r;
      }
    }
    if (bestAbs > 0.0) m.col(c) *= std::conj(m(best, c)) / bestAbs;
  }
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace detail
}  // namespace liftlab
