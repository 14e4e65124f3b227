#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/multianalytic.hpp"
#include "liftlab/rowop.hpp"
#include "liftlab/subspace.hpp"

namespace liftlab {

/// Truncated coordinates of the model space (Gamma (x) L) + closure(Delta(Gamma (x) D)).
///
/// A vector eta + Delta xi is stored raw as (eta, xi) with eta on Gamma_{N+p} (x) L and xi on
/// Gamma_N (x) D. Its Euclidean image is (eta, F xi) where F^* F = I - M^* M on Gamma_N (x) D.
/// Inner products between raw vectors are exact as long as supports stay inside those grades.
class SymbolSpace {
 public:
  SymbolSpace(const Symbol& theta, int nBuild);

  const Symbol& symbol() const noexcept { return theta_; }
  int n_build() const noexcept { return n_; }
  int degree() const noexcept { return p_; }
  Grade grade_xi() const { return Grade{theta_.d, n_, theta_.dimD, 0}; }
  Grade grade_eta() const { return Grade{theta_.d, n_ + p_, theta_.dimL, 0}; }
  Eigen::Index dim_eta() const noexcept { return m_.rows(); }
  Eigen::Index dim_xi() const noexcept { return m_.cols(); }
  Eigen::Index dim_raw() const noexcept { return m_.rows() + m_.cols(); }
  Eigen::Index rank_delta() const noexcept { return f_.rows(); }
  Eigen::Index dim_embedded() const noexcept { return m_.rows() + f_.rows(); }

  const SpMatrix& M() const noexcept { return m_; }
  const CMatrix& F() const noexcept { return f_; }

  /// Raw columns [eta; xi] -> Euclidean columns [eta; F xi].
  CMatrix embed(const CMatrix& raw) const;
  /// W^* applied to raw columns: M^* eta + F^* F xi on Gamma_N (x) D.
  CMatrix w_adjoint(const CMatrix& raw) const;
  /// W applied to Gamma_N (x) D columns, as raw columns.
  CMatrix w_raw(const CMatrix& zeta) const;
  /// Raw columns of W(e_0 (x) delta) for the standard basis of D.
  CMatrix vacuum_w_raw() const;
  /// L_j on both parts; fails if mass would leave the truncation.
  CMatrix shift(int j, const CMatrix& raw) const;
  /// Maximal column mass supported on the top degrees (eta above nEta, xi above nXi).
  double top_mass(const CMatrix& raw, int nEta, int nXi) const;

 private:
  Symbol theta_;
  int n_;
  int p_;
  SpMatrix m_;
  CMatrix f_;
};

/// Ordered modified Gram-Schmidt with two passes, carrying raw preimages of every basis vector.
class OrderedBasis {
 public:
  OrderedBasis(Eigen::Index rawDim, Eigen::Index embeddedDim, double tol);
  /// Returns true when the candidate added a new direction.
  bool add(const CVector& raw, const CVector& embedded);
  Eigen::Index size() const noexcept { return count_; }
  CMatrix raw() const { return raw_.leftCols(count_); }
  CMatrix embedded() const { return emb_.leftCols(count_); }

 private:
  CMatrix raw_, emb_;
  Eigen::Index count_ = 0;
  double tol_;
  double scale_ = 0.0;
};

struct ModelPolicy {
  int nBuild = 10;
  int nReport = 6;
  int buffer = 1;
  double stabilizationTol = 1e-7;
};

void validate_policy(int nBuild, int nReport, int buffer);

struct FunctionalModel {
  Symbol symbol;
  ModelPolicy policy;
  SymbolSpace space;
  ContractivityCertificate certificate;

  Subspace deltaRange;        // coordinates of the Delta part inside the embedded ambient
  Subspace HD;                // range of W on Gamma_{nBuild}
  Subspace HA;                // span of P_{H_A}(e_alpha (x) l, 0), |alpha| <= nReport
  CMatrix HAraw;              // raw preimages of the HA basis
  Subspace LA, LE, kerVDAdjoint;           // embedded
  Subspace LAcoords, LEcoords, kerCoords;  // D-coordinates via W(e_0 (x) .)
  RowTuple A;                 // compression of V to HA
  double stabilizationResidual = 0.0;
  double wandererLeak = 0.0;  // mass of P_{H_D} V a outside W(e_0 (x) D)
};

FunctionalModel build_model(const Symbol& theta, const ModelPolicy& policy);

struct ClassifyReport {
  SymbolReport predicates;
  Eigen::Index dimLA = 0, dimLE = 0, dimKer = 0;
  bool LAeqLE = false, LEeqKer = false, LAeqKer = false;
  /// Symbol-side conditions of the three equivalences.
  bool condA = false, condB = false, condC = false;
  bool consistent() const { return LAeqLE == condA && LEeqKer == condB && LAeqKer == condC; }
  std::string to_string() const;
};

/// Throws InconsistentWithTheorem if the subspace equalities disagree with the symbol predicates.
ClassifyReport classify(const FunctionalModel& model, bool throwOnMismatch = true);

struct ModelPropsReport {
  Eigen::Index intersectionDim = 0;
  double intersectionResidual = 0.0;  // largest cosine between HA and the Delta part
  std::optional<int> cncCertifiedAt;
  LemmaInvReport lemma;
  bool lemmaEvaluated = false;
  std::string lemmaError;
};

ModelPropsReport verify_model_props(const FunctionalModel& model);

/// Lemma-inv instance of the model: T = V on interior degrees, K1 = + W(Gamma_{N-1}), K2 = W(Gamma_N).
struct ModelLemmaInstance {
  CMatrix T;
  Subspace K1, K2;
};
ModelLemmaInstance model_lemma_instance(const SymbolSpace& space);

}  // namespace liftlab
