#pragma once

#include <string>
#include <vector>

#include "liftlab/common.hpp"

namespace liftlab {

/// Subspace of C^ambientDim stored via an orthonormal basis.
class Subspace {
 public:
  Subspace() = default;
  /// `basis` must already have orthonormal columns.
  Subspace(Eigen::Index ambientDim, CMatrix basis, double tol = default_rank_tol());

  /// Column span of `vectors` after a rank decision at tol * sigma_max.
  static Subspace span_of(const CMatrix& vectors, double tol = default_rank_tol());
  /// Same, with the threshold never below tol * floorScale (for vectors of known unit scale).
  static Subspace span_of(const CMatrix& vectors, double tol, double floorScale);
  static Subspace zero(Eigen::Index ambientDim, double tol = default_rank_tol());
  static Subspace whole(Eigen::Index ambientDim, double tol = default_rank_tol());

  Eigen::Index ambient_dim() const noexcept { return ambient_; }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  const CMatrix& basis() const noexcept { return basis_; }
  double tol() const noexcept { return tol_; }

  CMatrix project(const CMatrix& x) const;
  CMatrix projector() const { return basis_ * basis_.adjoint(); }
  /// Orthogonal complement inside the ambient space.
  Subspace complement() const;

 private:
  Eigen::Index ambient_ = 0;
  CMatrix basis_;
  double tol_ = 1e-10;
};

struct PrincipalAngleReport {
  std::vector<double> angles;  // non-increasing
  double containmentResidual = 0.0;
  bool equal = false;
};

/// Hermitian PSD square root; eigenvalues in [-clipTol, 0) are clipped.
CMatrix psd_sqrt(const CMatrix& m, double clipTol);

double op_norm(const CMatrix& m);

Subspace span(const Subspace& s, const Subspace& t);
Subspace span(const Subspace& s, const CMatrix& vectors);
/// { x in S : x orthogonal to T }.
Subspace ominus(const Subspace& s, const Subspace& t);
/// Directions of S at angle with cos >= 1 - tol to T.
Subspace intersect(const Subspace& s, const Subspace& t, double tol = 1e-8);
CMatrix project(const Subspace& s, const CMatrix& x);
/// Image of a subspace under a matrix.
Subspace image(const CMatrix& op, const Subspace& s, double tol = default_rank_tol());

/// || (I - P_T) basis(S) ||.
double containment_residual(const Subspace& s, const Subspace& t);
/// max of both containment residuals; +inf when dimensions differ.
double subspace_distance(const Subspace& s, const Subspace& t);
PrincipalAngleReport principal_angles(const Subspace& s, const Subspace& t, double tol = 1e-8);
bool subspaces_equal(const Subspace& s, const Subspace& t, double tol = 1e-8);

/// ker of the adjoint of T restricted to K1 -> K2, computed as { xi in K2 : P_K1 T* xi = 0 }.
Subspace kernel_adjoint_restricted(const CMatrix& t, const Subspace& k1, const Subspace& k2,
                                   double tol = 1e-9);

struct LemmaInvReport {
  Eigen::Index dimKernelRestricted = 0;
  Eigen::Index dimL = 0;
  Eigen::Index dimKernelCapK2 = 0;
  double residualI = 0.0;        // characterization (i) vs direct null space of the restriction
  double residualII = 0.0;       // P_K2 ker T* inside ker of the restricted adjoint
  double residualIIISpan = 0.0;  // span{L, P_K2 ker T*} = ker of the restricted adjoint
  double residualIIISum = 0.0;   // L + (ker T* cap K2) = ker of the restricted adjoint
  double orthogonality = 0.0;    // L against ker T* cap K2
  double max_residual() const;
  bool holds(double tol) const { return max_residual() <= tol; }
  std::string to_string() const;
};

LemmaInvReport verify_lemma_inv(const CMatrix& t, const Subspace& k1, const Subspace& k2,
                                double tol = 1e-9);

}  // namespace liftlab
