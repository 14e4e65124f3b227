#include "bank.hpp"

#include <cmath>

namespace liftlab::bank {

CMatrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = nd(rng);
      const double im = nd(rng);
      m(r, c) = cplx(re, im);
    }
  return m;
}

CMatrix random_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  const CMatrix g = gaussian(rng, rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(rows, cols);
}

double norm_bound(const Symbol& theta) {
  double s = 0.0;
  for (int n = 0; n <= theta.degree(); ++n) {
    const CMatrix st = theta.stacked(n, n);
    if (st.size()) s += Eigen::JacobiSVD<CMatrix>(st).singularValues()(0);
  }
  return s;
}

Symbol random_symbol(Rng& rng, int d, int dimD, int dimL, int degree, double target) {
  Symbol s(d, dimD, dimL);
  for (const Word& w : enumerate_words(d, degree)) s.set(w, gaussian(rng, dimL, dimD));
  const double b = norm_bound(s);
  for (auto& [w, m] : s.coeffs) m *= target / b;
  return s;
}

Lifting random_nilpotent_lifting(Rng& rng, int d, int dimC, int dimA, double scale) {
  for (;;) {
    std::vector<CMatrix> c, b, a;
    for (int j = 0; j < d; ++j) {
      c.push_back(gaussian(rng, dimC, dimC));
      b.push_back(gaussian(rng, dimA, dimC));
      CMatrix aj = gaussian(rng, dimA, dimA);
      aj = aj.triangularView<Eigen::StrictlyLower>().toDenseMatrix();
      a.push_back(aj);
    }
    Lifting e(RowTuple(c, "H_C"), b, RowTuple(a, "H_A"));
    const double f = scale / e.E().row_norm();
    for (auto& m : e.C.blocks) m *= f;
    for (auto& m : e.B) m *= f;
    for (auto& m : e.A.blocks) m *= f;
    if (is_minimal(e).minimal) return e;
  }
}

Lifting random_coisometric_lifting(Rng& rng) {
  const CMatrix q = random_isometry(rng, 2, 2);
  std::vector<CMatrix> c, b, a;
  for (int j = 0; j < 2; ++j) {
    c.push_back(CMatrix::Constant(1, 1, std::conj(q(j, 0))));
    b.push_back(CMatrix::Constant(1, 1, std::conj(q(j, 1))));
    a.push_back(CMatrix::Zero(1, 1));
  }
  return Lifting(RowTuple(c, "H_C"), b, RowTuple(a, "H_A"));
}

Symbol z_over_two() {
  Symbol s(1, 1, 1);
  s.set(Word{{1}}, CMatrix::Constant(1, 1, 0.5));
  return s;
}

std::vector<NamedSymbol> trichotomy_bank(std::uint64_t seed) {
  std::vector<NamedSymbol> out;
  out.push_back({"mobius(0.5)", mobius(0.5, 40).symbol()});
  out.push_back({"constant(1/2)", Symbol::constant(1, CMatrix::Constant(1, 1, 0.5))});
  out.push_back({"z/2", z_over_two()});
  CMatrix nonInj = CMatrix::Zero(2, 2);
  nonInj(0, 0) = 0.5;
  out.push_back({"non-injective", Symbol::constant(1, nonInj)});
  Rng rng(seed);
  out.push_back({"d2-degree2", random_symbol(rng, 2, 2, 2, 2)});
  return out;
}

std::vector<NamedSchur> schur_bank() {
  std::vector<NamedSchur> out;
  out.push_back({"mobius(0.5)", mobius(0.5, 40)});
  out.push_back({"mobius(0.3+0.4i)", mobius(cplx(0.3, 0.4), 60)});
  out.push_back({"z/2", monomial(0.5, 1)});
  out.push_back({"constant(1/2)", constant_schur(0.5)});
  out.push_back({"constant(0.99)", constant_schur(0.99)});
  out.push_back({"constant(1)", constant_schur(1.0)});
  out.push_back({"z^2", monomial(1.0, 2)});
  ScalarSchur half;
  half.taylor = {0.5, 0.5};
  out.push_back({"(1+z)/2", half});
  ScalarSchur blaschke = ScalarSchur::from_symbol(compose(mobius(0.5, 40).symbol(), mobius(-0.5, 40).symbol()));
  blaschke.provenance = "truncationOf:mobius(0.5)*mobius(-0.5)@40";
  out.push_back({"blaschke(0.5,-0.5)", blaschke});
  return out;
}

}  // namespace liftlab::bank
