#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/common.hpp"
#include "liftlab/fock.hpp"
#include "liftlab/subspace.hpp"

namespace liftlab {

/// d square blocks acting on a common space of dimension dim.
struct RowTuple {
  int d = 1;
  Eigen::Index dim = 0;
  std::vector<CMatrix> blocks;
  std::string spaceTag;

  RowTuple() = default;
  RowTuple(std::vector<CMatrix> blocks, std::string tag = {});
  static RowTuple zero(int d, Eigen::Index dim, std::string tag = {});

  const CMatrix& operator[](int j) const { return blocks[static_cast<std::size_t>(j)]; }
  /// Row operator (T_1 ... T_d) : dim*d -> dim.
  CMatrix row() const;
  /// T_alpha = T_{a_1} ... T_{a_m}.
  CMatrix word(const Word& w) const;
  double row_norm() const;
};

struct ContractionCheck {
  bool ok = false;
  double margin = 0.0;  // 1 - lambda_max(sum T_j T_j^*)
};

ContractionCheck is_row_contraction(const RowTuple& t, double tol = 1e-10);
bool is_row_isometry(const RowTuple& t, double tol = 1e-10);

/// Factorization G = F^* F of a PSD matrix, F = Lambda^{1/2} U^* over eigenvalues above the floor.
struct PsdFactor {
  CMatrix basis;   // n x r, pinned eigenvectors, eigenvalues descending
  RVector values;  // r eigenvalues
  CMatrix factor;  // r x n
  Eigen::Index rank() const { return basis.cols(); }
};

PsdFactor psd_factor(const CMatrix& g, double floor = kDeltaFloor, double clipTol = kClipTol);

struct DefectData {
  CMatrix defectOperator;  // D_T on the d-fold sum
  Subspace defectSpace;    // range of D_T, pinned basis
  int defect = 0;
  /// Coordinates of D_T x in the pinned basis: defect x (d*dim).
  CMatrix coordinates;
};

/// Block Gram (delta_ij I - T_i^* T_j).
CMatrix defect_gram(const RowTuple& t);
DefectData defect(const RowTuple& t);

/// Schaffer-type minimal isometric dilation on H_T + (Gamma_N (x) D_T).
class Dilation {
 public:
  Dilation(RowTuple base, int N);

  const RowTuple& base() const noexcept { return base_; }
  const DefectData& defect_data() const noexcept { return defect_; }
  int N() const noexcept { return n_; }
  int defect() const noexcept { return defect_.defect; }

  /// Grade of H_T + Gamma_n (x) D_T.
  Grade grade(int n) const { return Grade{base_.d, n, defect_.defect, base_.dim}; }
  Eigen::Index space_dim(int n) const;

  /// V_j from grade n to grade n + 1 (exact).
  GradedOperator block(int j, int n) const;
  const GradedOperator& block(int j) const { return blocks_[static_cast<std::size_t>(j - 1)]; }
  /// V_j applied to a vector on grade n; returns a vector on grade n + 1.
  CVector apply(int j, const CVector& v, int n) const;
  /// V_alpha applied to a vector on H_T; the result lives on grade |alpha|.
  CVector apply_word(const Word& w, const CVector& h) const;

  /// span{H_T, V(+H_T)} - H_T at grade 1.
  const Subspace& wandering() const noexcept { return wandering_; }
  /// D_T -> L_T in pinned coordinates: columns are the images of the defect basis.
  const CMatrix& canonical_unitary() const noexcept { return unitary_; }

 private:
  RowTuple base_;
  DefectData defect_;
  int n_;
  std::vector<GradedOperator> blocks_;
  Subspace wandering_;
  CMatrix unitary_;
};

Dilation minimal_isometric_dilation(const RowTuple& t, int N);

/// First n <= horizon with the nested kernels of I - Q_m trivial; nullopt when unresolved.
std::optional<int> cnc_certificate(const RowTuple& a, int horizon, double tol = 1e-9);

}  // namespace liftlab
