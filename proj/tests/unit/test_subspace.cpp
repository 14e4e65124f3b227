#include <doctest.h>

#include "bank.hpp"
#include "liftlab/subspace.hpp"
#include "oracles.hpp"

using namespace liftlab;

TEST_SUITE("subspace") {

TEST_CASE("psd square root of a scaled identity") {
  const CMatrix m = CMatrix::Identity(4, 4) - 0.25 * CMatrix::Identity(4, 4);
  const CMatrix r = psd_sqrt(m, 1e-9);
  CHECK((r - (std::sqrt(3.0) / 2.0) * CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("psd square root clips tiny negative eigenvalues and rejects large ones") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1e-12;
  CHECK(psd_sqrt(m, 1e-9)(1, 1) == cplx(0.0));
  m(1, 1) = -1e-3;
  CHECK_THROWS_AS(psd_sqrt(m, 1e-9), Error);
}

TEST_CASE("span, complement and projection") {
  bank::Rng rng(1);
  const CMatrix g = bank::gaussian(rng, 6, 2);
  CMatrix dup(6, 3);
  dup << g, g.col(0) + 2.0 * g.col(1);
  const Subspace s = Subspace::span_of(dup);
  CHECK(s.dim() == 2);
  const Subspace c = s.complement();
  CHECK(c.dim() == 4);
  CHECK((s.basis().adjoint() * c.basis()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((s.project(g) - g).norm() < 1e-12);
  CHECK((s.projector() + c.projector() - CMatrix::Identity(6, 6)).norm() < 1e-12);
}

TEST_CASE("rank floor keeps rounding noise out of the span") {
  CMatrix v = CMatrix::Zero(5, 2);
  v(0, 1) = 1e-15;
  CHECK(Subspace::span_of(v, 1e-10, 1.0).dim() == 0);
  v(1, 0) = 1.0;
  CHECK(Subspace::span_of(v, 1e-10, 1.0).dim() == 1);
}

TEST_CASE("intersection and ominus") {
  CMatrix a = CMatrix::Zero(4, 2), b = CMatrix::Zero(4, 2);
  a(0, 0) = a(1, 1) = 1.0;
  b(1, 0) = b(2, 1) = 1.0;
  const Subspace s(4, a), t(4, b);
  const Subspace i = intersect(s, t);
  REQUIRE(i.dim() == 1);
  CHECK(std::abs(i.basis()(1, 0)) == doctest::Approx(1.0));
  const Subspace o = ominus(s, t);
  REQUIRE(o.dim() == 1);
  CHECK(std::abs(o.basis()(0, 0)) == doctest::Approx(1.0));
  CHECK(span(s, t).dim() == 3);
}

TEST_CASE("principal angles of two planes") {
  const double th = 0.3;
  CMatrix a = CMatrix::Zero(3, 1), b = CMatrix::Zero(3, 1);
  a(0, 0) = 1.0;
  b(0, 0) = std::cos(th);
  b(1, 0) = std::sin(th);
  const PrincipalAngleReport r = principal_angles(Subspace(3, a), Subspace(3, b));
  REQUIRE(r.angles.size() == 1);
  CHECK(r.angles[0] == doctest::Approx(th));
  CHECK_FALSE(r.equal);
  CHECK(subspaces_equal(Subspace(3, a), Subspace(3, a)));
  CHECK(subspace_distance(Subspace(3, a), Subspace::whole(3)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("image under a matrix") {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 1) = 2.0;
  const Subspace im = image(m, Subspace::whole(3));
  CHECK(im.dim() == 1);
}

TEST_CASE("restricted kernel agrees with the brute-force null space") {
  bank::Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix t = bank::random_isometry(rng, 12, 9);
    const CMatrix k1 = bank::random_isometry(rng, 9, 4);
    CMatrix gen(12, 7);
    gen << t * k1, bank::gaussian(rng, 12, 3);
    const Subspace s1(9, k1), s2 = Subspace::span_of(gen);
    const Subspace k = kernel_adjoint_restricted(t, s1, s2);
    CHECK(k.dim() == oracle::restricted_kernel_dim(t, k1, s2.basis()));
    CHECK((k1.adjoint() * t.adjoint() * k.basis()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(containment_residual(k, s2) < 1e-10);
  }
}

TEST_CASE("lemma identities on random invariant pairs") {
  bank::Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n2 = 10 + trial % 7;
    const int n1 = n2 - trial % 4;
    const CMatrix t = bank::random_isometry(rng, n2, n1);
    const int k1 = 1 + trial % (n1 - 1);
    const CMatrix b1 = bank::random_isometry(rng, n1, k1);
    const int extra = trial % 3;
    CMatrix gen(n2, k1 + extra);
    gen.leftCols(k1) = t * b1;
    if (extra) gen.rightCols(extra) = bank::gaussian(rng, n2, extra);
    const LemmaInvReport r = verify_lemma_inv(t, Subspace(n1, b1), Subspace::span_of(gen));
    CHECK(r.holds(1e-9));
  }
}

TEST_CASE("lemma rejects a pair with T K1 outside K2") {
  bank::Rng rng(3);
  const CMatrix t = bank::random_isometry(rng, 8, 6);
  const Subspace k1(6, bank::random_isometry(rng, 6, 2));
  const Subspace k2(8, bank::random_isometry(rng, 8, 2));
  CHECK_THROWS_AS(verify_lemma_inv(t, k1, k2), Error);
}

}
