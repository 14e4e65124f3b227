#pragma once

// Brute-force reference computations used by the tests. Nothing here calls into the
// routines it is meant to check.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "liftlab/multianalytic.hpp"

namespace oracle {

using liftlab::cplx;
using liftlab::CMatrix;

// (z - a) / (1 - conj(a) z) by long division of power series.
inline std::vector<cplx> mobius_taylor(cplx a, int degree) {
  std::vector<cplx> num(static_cast<std::size_t>(degree) + 1, 0.0);
  num[0] = -a;
  if (degree >= 1) num[1] = 1.0;
  std::vector<cplx> out(num.size(), 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = num[k] + (k ? std::conj(a) * out[k - 1] : cplx(0.0));
  return out;
}

// Rotate a coefficient list so that its first entry above eps is real positive.
inline std::vector<cplx> phase_normalized(std::vector<cplx> c, double eps = 1e-12) {
  for (const cplx& x : c) {
    if (std::abs(x) > eps) {
      const cplx u = std::conj(x) / std::abs(x);
      for (cplx& y : c) y *= u;
      break;
    }
  }
  return c;
}

inline double smallest_singular(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return m.rows() >= m.cols() ? s(s.size() - 1) : 0.0;
}

// All coefficients of theta stacked vertically, order irrelevant for rank questions.
inline CMatrix full_stack(const liftlab::Symbol& theta, int minLength = 0) {
  Eigen::Index rows = 0;
  for (const auto& [w, c] : theta.coeffs)
    if (static_cast<int>(w.length()) >= minLength) rows += c.rows();
  CMatrix out(rows, theta.dimD);
  Eigen::Index r = 0;
  for (const auto& [w, c] : theta.coeffs) {
    if (static_cast<int>(w.length()) < minLength) continue;
    out.middleRows(r, c.rows()) = c;
    r += c.rows();
  }
  return out;
}

// Coefficients of M_{theta1} M_{theta2}: the word beta alpha collects theta1_alpha theta2_beta.
inline liftlab::Symbol product(const liftlab::Symbol& t1, const liftlab::Symbol& t2) {
  liftlab::Symbol out(t1.d, t2.dimD, t1.dimL);
  for (const auto& [b, c2] : t2.coeffs) {
    for (const auto& [a, c1] : t1.coeffs) {
      liftlab::Word w = b;
      w.letters.insert(w.letters.end(), a.letters.begin(), a.letters.end());
      out.set(w, out.coeff(w) + c1 * c2);
    }
  }
  return out;
}

// Null space dimension of P_K1 T^* restricted to K2, from a dense SVD.
inline Eigen::Index restricted_kernel_dim(const CMatrix& t, const CMatrix& k1, const CMatrix& k2,
                                          double tol = 1e-9) {
  if (k2.cols() == 0) return 0;
  if (k1.cols() == 0) return k2.cols();
  const CMatrix r = k1.adjoint() * t.adjoint() * k2;
  Eigen::JacobiSVD<CMatrix> svd(r);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  return k2.cols() - rank;
}

// max |x^* y - delta I| over a list of blocks, with x, y sparse.
template <class Sp>
double row_isometry_defect(const std::vector<Sp>& blocks) {
  double worst = 0.0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      Sp g = Sp(blocks[j].adjoint()) * blocks[k];
      if (j == k) {
        Sp id(g.rows(), g.cols());
        id.setIdentity();
        g -= id;
      }
      for (int o = 0; o < g.outerSize(); ++o)
        for (typename Sp::InnerIterator it(g, o); it; ++it) worst = std::max(worst, std::abs(it.value()));
      if (j == k && g.rows() != g.cols()) return 1.0;
    }
  }
  return worst;
}

}  // namespace oracle
