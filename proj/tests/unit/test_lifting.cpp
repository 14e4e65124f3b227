#include <doctest.h>

#include "bank.hpp"
#include "liftlab/lifting.hpp"
#include "liftlab/schur.hpp"
#include "oracles.hpp"

using namespace liftlab;

namespace {

const RowTuple kHalf({CMatrix::Constant(1, 1, 0.5)}, "H_C");

Lifting example_lifting(double a) {
  const double w = 1.0 - a * a;
  return Lifting(kHalf, {CMatrix::Constant(1, 1, std::sqrt(0.75) * std::sqrt(w))}, RowTuple({CMatrix::Constant(1, 1, a)}));
}

}  // namespace

TEST_SUITE("lifting") {

TEST_CASE("block layout and splitting") {
  const Lifting e = example_lifting(0.5);
  const RowTuple t = e.E();
  CHECK(t.dim == 2);
  CHECK(t[0](0, 1) == cplx(0.0));
  const Lifting back = Lifting::from_tuple(t, 1);
  CHECK(back.B[0](0, 0) == e.B[0](0, 0));
  CHECK(back.finite());
  RowTuple bad = t;
  bad.blocks[0](0, 1) = 0.1;
  CHECK_THROWS_AS(Lifting::from_tuple(bad, 1), Error);
}

TEST_CASE("characteristic function of the Mobius lifting") {
  const CharFnResult m = map_M(example_lifting(0.5), 8);
  const Symbol n = normalize_phase(m.symbol);
  const auto want = oracle::phase_normalized(oracle::mobius_taylor(0.5, 8));
  for (int k = 0; k <= 8; ++k) {
    const Word w{std::vector<int>(static_cast<std::size_t>(k), 1)};
    CHECK(std::abs(n.coeff(w)(0, 0) - want[static_cast<std::size_t>(k)]) < 1e-12);
  }
  const std::vector<double> head{0.5, 0.75, 0.375, 0.1875};
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(std::abs(m.symbol.coeff(Word{std::vector<int>(static_cast<std::size_t>(k), 1)})(0, 0)) - head[k]) < 1e-12);
}

TEST_CASE("minimality of the Mobius lifting") {
  CHECK(is_minimal(example_lifting(0.5)).minimal);
  Lifting idle(kHalf, {CMatrix::Zero(1, 1)}, RowTuple({CMatrix::Identity(1, 1)}));
  const MinimalityResult r = is_minimal(idle);
  CHECK_FALSE(r.minimal);
  CHECK(std::abs(r.witness(1)) == doctest::Approx(1.0));
}

TEST_CASE("map_E produces minimal liftings") {
  const LiftResult r = map_E(kHalf, bank::z_over_two(), LiftPolicy{});
  CHECK_FALSE(r.finite);
  CHECK(is_minimal(r.lifting).minimal);
  CHECK(is_row_contraction(r.lifting.E(), 1e-9).ok);
}

TEST_CASE("non-contractive symbols are refused") {
  CHECK_THROWS_AS(map_E(kHalf, Symbol::constant(1, CMatrix::Constant(1, 1, 2.0)), LiftPolicy{}), Error);
}

TEST_CASE("roundtrip of a non-injective symbol changes the coefficient space") {
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 0) = 0.5;
  const RoundtripMEReport r = roundtrip_ME(contraction_with_defect(1, 2), Symbol::constant(1, c), LiftPolicy{});
  CHECK(r.dimDIn == 2);
  CHECK(r.dimDOut == 1);
  CHECK_FALSE(r.passed(1e-7));
}

TEST_CASE("roundtrip of the Mobius lifting") {
  const RoundtripEMReport r = roundtrip_EM(example_lifting(0.5), LiftPolicy{});
  CHECK(r.equivalent());
  CHECK(r.residual <= 1e-7);
}

TEST_CASE("lifting equivalence") {
  CHECK_FALSE(liftings_equivalent(example_lifting(0.3), example_lifting(0.4)).equivalent);
  Lifting e = example_lifting(0.5);
  Lifting rotated = e;
  const cplx ph = std::polar(1.0, 0.7);
  rotated.B[0] *= ph;
  const LiftingEquivalence r = liftings_equivalent(e, rotated);
  CHECK(r.equivalent);
  CHECK(std::abs(r.u(1, 1) - ph) < 1e-10);
}

TEST_CASE("characteristic function of the zero contraction is z") {
  const CncCharFn c = charfn_cnc(RowTuple({CMatrix::Zero(1, 1)}), 4);
  const Symbol n = normalize_phase(c.symbol);
  CHECK(std::abs(n.coeff(Word{})(0, 0)) < 1e-14);
  CHECK(std::abs(n.coeff(Word{{1}})(0, 0) - cplx(1.0)) < 1e-14);
  CHECK(std::abs(n.coeff(Word{{1, 1}})(0, 0)) < 1e-14);
}

TEST_CASE("bridge on a constant symbol predicts the failure of L_E = L_A") {
  const LiftResult r = map_E(kHalf, Symbol::constant(1, CMatrix::Constant(1, 1, 0.5)), LiftPolicy{});
  const BridgeReport b = theorem45_bridge(r.lifting, LiftPolicy{});
  CHECK(b.predicates.purelyContractive);
  CHECK_FALSE(b.predicted);
  CHECK(b.holds());
}

TEST_CASE("contraction with a prescribed defect") {
  for (int d = 1; d <= 3; ++d)
    for (int q = d == 1 ? 1 : d - 1; q <= 3; ++q) {
      const RowTuple c = contraction_with_defect(d, q);
      CHECK(defect(c).defect == q);
      CHECK(is_row_contraction(c).ok);
    }
}

}
