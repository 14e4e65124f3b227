#include <doctest.h>

#include "bank.hpp"
#include "liftlab/rowop.hpp"

using namespace liftlab;

namespace {

RowTuple scaled_random(bank::Rng& rng, int d, int n, double norm) {
  std::vector<CMatrix> b;
  for (int j = 0; j < d; ++j) b.push_back(bank::gaussian(rng, n, n));
  RowTuple t(b);
  const double s = t.row_norm();
  for (auto& x : t.blocks) x *= norm / s;
  return t;
}

}  // namespace

TEST_SUITE("rowop") {

TEST_CASE("row of a tuple and word products") {
  CMatrix a(1, 1), b(1, 1);
  a << 0.5;
  b << cplx(0.0, 0.25);
  const RowTuple t({a, b});
  CHECK(t.row().cols() == 2);
  CHECK(t.word(Word{{1, 2, 2}})(0, 0) == a(0, 0) * b(0, 0) * b(0, 0));
  CHECK(t.word(Word{})(0, 0) == cplx(1.0));
  CHECK(t.row_norm() == doctest::Approx(std::sqrt(0.25 + 0.0625)));
}

TEST_CASE("contraction and isometry checks") {
  CHECK(is_row_contraction(RowTuple({CMatrix::Constant(1, 1, 0.5)})).ok);
  CHECK_FALSE(is_row_contraction(RowTuple({CMatrix::Constant(1, 1, 0.8), CMatrix::Constant(1, 1, 0.8)})).ok);
  CHECK(is_row_isometry(RowTuple({CMatrix::Identity(2, 2)})));
  CHECK_FALSE(is_row_isometry(RowTuple({CMatrix::Constant(1, 1, 0.5)})));
}

TEST_CASE("defect of (0.5, 0.5) on C^1") {
  const RowTuple c({CMatrix::Constant(1, 1, 0.5), CMatrix::Constant(1, 1, 0.5)});
  CMatrix want(2, 2);
  want << 0.75, -0.25, -0.25, 0.75;
  CHECK((defect_gram(c) - want).cwiseAbs().maxCoeff() < 1e-15);
  const DefectData dd = defect(c);
  CHECK(dd.defect == 2);
  CHECK((dd.defectOperator * dd.defectOperator - want).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((dd.coordinates.adjoint() * dd.coordinates - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("psd factor reproduces the matrix and drops the null part") {
  CMatrix g = CMatrix::Zero(3, 3);
  g(0, 0) = 2.0;
  g(1, 1) = 0.5;
  const PsdFactor f = psd_factor(g);
  CHECK(f.rank() == 2);
  CHECK(f.values(0) == doctest::Approx(2.0));
  CHECK((f.factor.adjoint() * f.factor - g).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dilation is a row isometry that compresses to T") {
  bank::Rng rng(5);
  const RowTuple t = scaled_random(rng, 2, 3, 0.8);
  const Dilation v = minimal_isometric_dilation(t, 6);
  for (int n = 0; n <= 6; ++n) {
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        const CMatrix g = v.block(i, n).dense().adjoint() * v.block(j, n).dense();
        const Eigen::Index m = v.space_dim(n);
        const CMatrix want = i == j ? CMatrix(CMatrix::Identity(m, m)) : CMatrix(CMatrix::Zero(m, m));
        CHECK((g - want).cwiseAbs().maxCoeff() < 1e-12);
      }
  }
  for (const Word& w : enumerate_words(2, 6)) {
    CMatrix compressed(3, 3);
    for (int c = 0; c < 3; ++c) compressed.col(c) = v.apply_word(w, CVector::Unit(3, c)).head(3);
    CHECK((compressed - t.word(w)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("wandering space of the dilation has the defect dimension") {
  bank::Rng rng(6);
  const RowTuple t = scaled_random(rng, 2, 2, 0.7);
  const Dilation v = minimal_isometric_dilation(t, 3);
  CHECK(v.defect() == 4);
  CHECK(v.wandering().dim() == 4);
  const CMatrix u = v.canonical_unitary();
  CHECK((u.adjoint() * u - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("truncated weighted shift is certified completely non-coisometric") {
  const int n = 8;
  CMatrix a = CMatrix::Zero(n, n);
  a(1, 0) = std::sqrt(3.0) / 2.0;
  for (int i = 2; i < n; ++i) a(i, i - 1) = 1.0;
  const auto c = cnc_certificate(RowTuple({a}), n);
  REQUIRE(c.has_value());
  CHECK(*c <= n);
}

TEST_CASE("a unitary is never certified") {
  CHECK_FALSE(cnc_certificate(RowTuple({CMatrix::Identity(2, 2)}), 6).has_value());
}

}
