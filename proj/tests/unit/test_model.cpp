#include <doctest.h>

#include "bank.hpp"
#include "liftlab/model.hpp"
#include "liftlab/schur.hpp"

using namespace liftlab;

TEST_SUITE("model") {

TEST_CASE("W is an isometry on raw vectors") {
  bank::Rng rng(31);
  const Symbol th = bank::random_symbol(rng, 2, 2, 2, 2);
  const SymbolSpace sp(th, 4);
  const CMatrix zeta = bank::gaussian(rng, sp.dim_xi(), 3);
  const CMatrix img = sp.embed(sp.w_raw(zeta));
  for (int c = 0; c < 3; ++c) CHECK(img.col(c).norm() == doctest::Approx(zeta.col(c).norm()).epsilon(1e-10));
  CHECK((sp.w_adjoint(sp.w_raw(zeta)) - zeta).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("defect factor of z/2 is a scaled identity") {
  const SymbolSpace sp(bank::z_over_two(), 2);
  const CMatrix f = sp.F();
  CHECK(sp.rank_delta() == 3);
  CHECK((f.adjoint() * f - 0.75 * CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("shift intertwines W on interior degrees") {
  bank::Rng rng(32);
  const Symbol th = bank::random_symbol(rng, 2, 1, 2, 1);
  const int n = 4;
  const SymbolSpace sp(th, n);
  const Grade g = sp.grade_xi();
  CMatrix zeta = CMatrix::Zero(sp.dim_xi(), 2);
  zeta.topRows(g.with_N(n - 1).dim()) = bank::gaussian(rng, g.with_N(n - 1).dim(), 2);
  for (int j = 1; j <= 2; ++j) {
    const CMatrix lz = creation_within(j, g).dense() * zeta;
    CHECK((sp.shift(j, sp.w_raw(zeta)) - sp.w_raw(lz)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("policy validation") {
  CHECK_NOTHROW(validate_policy(10, 6, 1));
  CHECK_THROWS_AS(validate_policy(6, 6, 1), Error);
  CHECK_THROWS_AS(validate_policy(6, 4, 0), Error);
}

TEST_CASE("constant contraction has L_A = 0 inside L_E") {
  const FunctionalModel m = build_model(Symbol::constant(1, CMatrix::Constant(1, 1, 0.5)), ModelPolicy{});
  const ClassifyReport c = classify(m);
  CHECK(c.dimLA == 0);
  CHECK(c.dimLE == 1);
  CHECK(c.dimKer == 1);
  CHECK(c.consistent());
}

TEST_CASE("z/2 model") {
  const FunctionalModel m = build_model(bank::z_over_two(), ModelPolicy{10, 6, 1, 1e-7});
  const ClassifyReport c = classify(m);
  CHECK(c.LAeqLE);
  CHECK(c.LEeqKer);
  const ModelPropsReport p = verify_model_props(m);
  CHECK(p.intersectionDim == 0);
  CHECK(p.intersectionResidual < 1.0 - 1e-9);
  REQUIRE(p.lemmaEvaluated);
  CHECK(p.lemma.holds(1e-9));
}

TEST_CASE("compressed row tuple on H_A is a row contraction") {
  for (const auto& ns : bank::trichotomy_bank(7)) {
    const ModelPolicy pol = ns.symbol.d == 1 ? ModelPolicy{10, 6, 1, 1e-7} : ModelPolicy{6, 4, 1, 1e-7};
    const FunctionalModel m = build_model(ns.symbol, pol);
    CHECK_MESSAGE(is_row_contraction(m.A, 1e-9).ok, ns.name);
    CHECK_MESSAGE(classify(m, false).consistent(), ns.name);
  }
}

TEST_CASE("non-contractive symbols are refused") {
  CHECK_THROWS_AS(build_model(Symbol::constant(1, CMatrix::Constant(1, 1, 1.2)), ModelPolicy{}), Error);
}

}
