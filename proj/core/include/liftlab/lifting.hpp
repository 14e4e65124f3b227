#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/model.hpp"
#include "liftlab/multianalytic.hpp"
#include "liftlab/rowop.hpp"

namespace liftlab {

/// E = [[C, 0], [B, A]] on H_C + H_A.
///
/// `exactDim` counts the leading coordinates of H_E whose E-columns are those of the untruncated
/// lifting; the remaining columns are compressions. Finite liftings have exactDim == dim().
struct Lifting {
  RowTuple C;
  std::vector<CMatrix> B;  // d blocks, dim A x dim C
  RowTuple A;
  Eigen::Index exactDim = 0;

  Lifting() = default;
  Lifting(RowTuple c, std::vector<CMatrix> b, RowTuple a, Eigen::Index exact = -1);
  /// Splits a row tuple on H_C + H_A; fails if the upper-right blocks are not zero.
  static Lifting from_tuple(const RowTuple& e, Eigen::Index dimC, Eigen::Index exact = -1, double tol = 1e-10);

  int d() const noexcept { return C.d; }
  Eigen::Index dim_C() const noexcept { return C.dim; }
  Eigen::Index dim_A() const noexcept { return A.dim; }
  Eigen::Index dim() const noexcept { return C.dim + A.dim; }
  bool finite() const noexcept { return exactDim == dim(); }
  RowTuple E() const;
};

struct LiftPolicy {
  int nBuild = 12;
  int nReport = 8;
  int buffer = 1;
  double stabilizationTol = 1e-7;
};

struct LiftResult {
  Lifting lifting;
  ContractivityCertificate certificate;
  double stabilizationResidual = 0.0;
  bool finite = false;  // the Krylov sequence terminated before the report degree
};

/// E_j = P_{H_E} V_j restricted to H_E, with V = V^C on H_C + (Gamma (x) D_C) and the model row
/// isometry on H_Theta. `identification` maps L coordinates onto the pinned D_C coordinates.
LiftResult map_E(const RowTuple& C, const Symbol& theta, const LiftPolicy& policy,
                 const std::optional<CMatrix>& identification = std::nullopt);

struct CharFnResult {
  Symbol symbol;
  /// Basis of L_C as columns over (H_E coordinates, D_E coordinates).
  CMatrix lcBasis;
  /// Orthonormal basis of D_E inside the d-fold sum over the exact columns.
  CMatrix defectBasisE;
  /// D_E coordinates of D_E x: rank x (d * exactDim).
  CMatrix defectFactorE;
  /// Coefficients are exact through this degree.
  int exactDegree = 0;
};

/// Characteristic function of a lifting through `degree` (clipped to the exact degree).
CharFnResult map_M(const Lifting& e, int degree);

struct MinimalityResult {
  bool minimal = false;
  Eigen::Index reachedDim = 0;
  CVector witness;  // unit vector orthogonal to the reached span when not minimal
};

MinimalityResult is_minimal(const Lifting& e, int degree = -1);

struct RoundtripMEReport {
  int dimDIn = 0, dimDOut = 0;
  int comparedDegree = 0;
  bool injective = false;
  bool dimsMatch = false;
  double residual = 0.0;
  CMatrix alignment;  // unitary v with M(E(theta)) v = theta
  bool passed(double tol) const { return dimsMatch && residual <= tol; }
};

RoundtripMEReport roundtrip_ME(const RowTuple& C, const Symbol& theta, const LiftPolicy& policy);

struct RoundtripEMReport {
  bool minimal = false;
  bool symbolsEquivalent = false;
  bool dimsMatch = false;
  double residual = 0.0;
  int comparedDegree = 0;
  Eigen::Index dimE = 0, dimRebuilt = 0;
  bool equivalent() const { return symbolsEquivalent && dimsMatch; }
};

RoundtripEMReport roundtrip_EM(const Lifting& e, const LiftPolicy& policy, int degree = 40);

struct LiftingEquivalence {
  bool equivalent = false;
  EquivalenceResult symbols;
  CMatrix u;                     // H_E -> H_E', identity on H_C
  double intertwiningResidual = 0.0;
};

LiftingEquivalence liftings_equivalent(const Lifting& e, const Lifting& ePrime, double tol = 1e-7);

struct FactorReport {
  double residual = 0.0;
  bool equivalent = false;
  bool minimal = false;
  int comparedDegree = 0;
  Eigen::Index dimIntermediate = 0, dimFinal = 0;
};

FactorReport factor_check(const RowTuple& C, const Symbol& theta1, const Symbol& theta2, const LiftPolicy& policy);

struct CncCharFn {
  Symbol symbol;
  std::optional<int> cncCertifiedAt;
};

CncCharFn charfn_cnc(const RowTuple& a, int degree);

struct BridgeReport {
  SymbolReport predicates;
  bool finiteRoute = false;
  bool LEeqLA = false;
  bool LCeqLstar = false;
  bool conclusive = false;
  bool predicted = false;       // purely contractive and Szego
  bool geometric = false;       // L_E = L_A and L_C = L_{*,A}
  std::optional<double> charfnResidual;
  bool holds() const { return conclusive && predicted == geometric; }
  std::string to_string() const;
};

BridgeReport theorem45_bridge(const Lifting& e, const LiftPolicy& policy);

/// Deterministic row contraction on C^m with the requested defect (m minimal).
RowTuple contraction_with_defect(int d, int defect);

}  // namespace liftlab
