#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "liftlab/multianalytic.hpp"

namespace liftlab {

/// Scalar Schur function given by Taylor coefficients c_0..c_p.
struct ScalarSchur {
  std::vector<cplx> taylor;
  /// "polynomial" or "truncationOf:<name>@<degree>".
  std::string provenance = "polynomial";

  Symbol symbol() const;
  static ScalarSchur from_symbol(const Symbol& s);
  cplx eval(cplx z) const;
};

/// (z - alpha) / (1 - conj(alpha) z) through `degree`.
ScalarSchur mobius(cplx alpha, int degree);
ScalarSchur constant_schur(cplx c);
ScalarSchur monomial(cplx c, int n);

struct SpectralSzego {
  bool diverges = false;
  double integral = 0.0;     // trapezoid value over the unflagged points (only meaningful when finite)
  int flaggedPoints = 0;
  int points = 0;
};

/// Trapezoid quadrature of log(1 - |Theta(e^{it})|^2) over [0, 2 pi).
SpectralSzego szego_spectral(const ScalarSchur& theta, int quadraturePoints);

struct CncSchurReport {
  bool cnc = false;
  bool pureAtZero = false;
  SpectralSzego spectral;
  SymbolReport operatorPredicates;
  /// Operator-level predicates agree with the scalar ones (inconclusive Szego counts as agreement).
  bool consistent = true;
};

CncSchurReport classify_cnc_schur(const ScalarSchur& theta, double tol = kPredicateTol);

}  // namespace liftlab
