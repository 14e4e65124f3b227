#pragma once

#include <map>
#include <optional>
#include <string>

#include "liftlab/common.hpp"
#include "liftlab/fock.hpp"

namespace liftlab {

/// Finitely supported symbol: theta_alpha : C^dimD -> C^dimL for words alpha.
struct Symbol {
  int d = 1;
  int dimD = 0;
  int dimL = 0;
  std::map<Word, CMatrix> coeffs;

  Symbol() = default;
  Symbol(int d, int dimD, int dimL);

  static Symbol constant(int d, const CMatrix& c);
  static Symbol identity(int d, int k) { return constant(d, CMatrix::Identity(k, k)); }

  /// Largest word length carrying a nonzero coefficient (0 for the zero symbol).
  int degree() const;
  CMatrix coeff(const Word& w) const;
  void set(const Word& w, const CMatrix& m);
  /// Coefficients of all words of length <= n, stacked vertically in graded-lex order.
  CMatrix stacked(int minLength, int maxLength) const;
  /// Drops words longer than n.
  Symbol truncated(int n) const;
  /// Drops coefficients with max |entry| <= eps.
  Symbol pruned(double eps = 0.0) const;
};

/// M_Theta : Gamma_N (x) D -> Gamma_{N+p} (x) L, exact up to degree N.
GradedOperator assemble(const Symbol& theta, int N);
/// Same, with the codomain cut at nCod (exact on inputs of degree <= nCod - p).
GradedOperator assemble(const Symbol& theta, int N, int nCod);

struct ContractivityCertificate {
  bool certified = false;
  double sigmaMax = 0.0;
  int checkedAtDegree = 0;
  std::optional<double> gridSup;  // d = 1 scalar symbols only
};

ContractivityCertificate certify_contractive(const Symbol& theta, int nCheck, double tol = kPredicateTol);

/// sup over an equispaced boundary grid of |sum c_n e^{int}|, d = 1 scalar symbols.
double boundary_grid_sup(const Symbol& theta, int points = 4096);

enum class SzegoVerdict { Holds, Fails, Inconclusive };
const char* to_string(SzegoVerdict v);

struct SzegoOperatorResult {
  SzegoVerdict verdict = SzegoVerdict::Inconclusive;
  /// lambda_max of the vacuum distance operator at the check degree and at check - buffer.
  double distance = 0.0;
  double distanceEarlier = 0.0;
};

/// Distance of Delta(e_0 (x) D) to the closed span of Delta on degrees 1..N, as an operator on D.
CMatrix szego_distance_operator(const Symbol& theta, int N);
SzegoOperatorResult szego_operator(const Symbol& theta, int nCheck, int buffer, double tol = 1e-8);

struct SymbolReport {
  bool injective = false;
  bool noConstantDirections = false;
  bool purelyContractive = false;
  SzegoVerdict szegoOperator = SzegoVerdict::Inconclusive;
  int contractivityCertifiedAtDegree = -1;
  double injectiveMargin = 0.0;      // smallest singular value of the full stack
  double constantDirMargin = 0.0;    // smallest singular value of the degree >= 1 stack
  double pureMargin = 0.0;           // 1 - sigma_max(theta_0)
  double szegoDistance = 0.0;
  std::string to_string() const;
};

SymbolReport predicates(const Symbol& theta, int nCheck = -1, int buffer = -1, double tol = kPredicateTol);

/// Coefficients of M_{theta1} M_{theta2}.
Symbol compose(const Symbol& theta1, const Symbol& theta2);
/// theta o u for a matrix u : D' -> D.
Symbol right_multiply(const Symbol& theta, const CMatrix& u);
/// w o theta for a matrix w : L -> L'.
Symbol left_multiply(const CMatrix& w, const Symbol& theta);

struct EquivalenceResult {
  bool equivalent = false;
  CMatrix v;                 // theta' v = theta
  double residual = 0.0;     // max |theta'_alpha v - theta_alpha|
  double unitarity = 0.0;    // || v^* v - I || + || v v^* - I ||
};

/// Looks for a unitary v with theta' o v = theta.
EquivalenceResult symbols_equivalent(const Symbol& theta, const Symbol& thetaPrime, double tol = 1e-7,
                                     int upToDegree = -1);

struct CoincidenceResult {
  bool coincide = false;
  CMatrix uL;  // L -> L'
  CMatrix uD;  // D -> D'
  double residual = 0.0;  // max |theta'_alpha uD - uL theta_alpha|
};

/// Looks for unitaries uL, uD with theta' uD = uL theta (both identifications free).
CoincidenceResult symbols_coincide(const Symbol& theta, const Symbol& thetaPrime, double tol = 1e-7,
                                   int upToDegree = -1);

/// max over words |alpha| <= upToDegree of max |theta_alpha - theta'_alpha|.
double coefficient_residual(const Symbol& a, const Symbol& b, int upToDegree);

/// Scalar symbols: multiply by a unimodular factor making the first nonzero coefficient real positive.
Symbol normalize_phase(const Symbol& theta, double eps = 1e-12);

}  // namespace liftlab
