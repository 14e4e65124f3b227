#include "liftlab/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace liftlab {

namespace {

double tuple_diff(const RowTuple& a, const RowTuple& b) {
  if (a.d != b.d || a.dim != b.dim) return std::numeric_limits<double>::infinity();
  double r = 0.0;
  for (int j = 0; j < a.d; ++j)
    if (a.dim) r = std::max(r, (a[j] - b[j]).cwiseAbs().maxCoeff());
  return r;
}

CMatrix row_of(const RowTuple& t, Eigen::Index cols) {
  CMatrix r(t.dim, t.d * cols);
  for (int j = 0; j < t.d; ++j) r.middleCols(j * cols, cols) = t[j].leftCols(cols);
  return r;
}

}  // namespace

Lifting::Lifting(RowTuple c, std::vector<CMatrix> b, RowTuple a, Eigen::Index exact)
    : C(std::move(c)), B(std::move(b)), A(std::move(a)) {
  if (C.d != A.d || static_cast<int>(B.size()) != C.d) fail(ErrorKind::DimensionMismatch, "lifting blocks disagree on d");
  for (const auto& blk : B)
    if (blk.rows() != A.dim || blk.cols() != C.dim) fail(ErrorKind::DimensionMismatch, "B block has wrong shape");
  exactDim = exact < 0 ? dim() : std::min(exact, dim());
}

Lifting Lifting::from_tuple(const RowTuple& e, Eigen::Index dimC, Eigen::Index exact, double tol) {
  if (dimC < 0 || dimC > e.dim) fail(ErrorKind::DimensionMismatch, "H_C does not fit in H_E");
  const Eigen::Index a = e.dim - dimC;
  std::vector<CMatrix> c, b, am;
  for (int j = 0; j < e.d; ++j) {
    if (dimC && a && e[j].topRightCorner(dimC, a).cwiseAbs().maxCoeff() > tol)
      fail(ErrorKind::InvalidInput, "lifting is not lower triangular");
    c.push_back(e[j].topLeftCorner(dimC, dimC));
    b.push_back(e[j].bottomLeftCorner(a, dimC));
    am.push_back(e[j].bottomRightCorner(a, a));
  }
  return Lifting(RowTuple(c, "H_C"), b, RowTuple(am, "H_A"), exact);
}

RowTuple Lifting::E() const {
  std::vector<CMatrix> blocks;
  for (int j = 0; j < d(); ++j) {
    CMatrix e = CMatrix::Zero(dim(), dim());
    e.topLeftCorner(dim_C(), dim_C()) = C[j];
    e.bottomLeftCorner(dim_A(), dim_C()) = B[static_cast<std::size_t>(j)];
    e.bottomRightCorner(dim_A(), dim_A()) = A[j];
    blocks.push_back(e);
  }
  return RowTuple(blocks, "H_E");
}

// ---------------------------------------------------------------------------------------------
// E: symbol -> lifting

namespace {

struct LiftOnce {
  RowTuple E;
  Eigen::Index exactDim = 0;
  bool finite = false;
};

// Krylov basis of H_E inside H_C + H_Theta; raw vectors are [h; eta; xi].
LiftOnce lift_once(const RowTuple& c, const Symbol& theta, const CMatrix& q, int nBuild, int nReport) {
  const Eigen::Index m = c.dim;
  const int d = c.d;
  const DefectData dc = defect(c);
  const SymbolSpace space(theta, nBuild);
  const Eigen::Index rawDim = m + space.dim_raw();
  const Eigen::Index embDim = m + space.dim_embedded();
  const Grade ge = space.grade_eta();
  const CMatrix qAdj = q.adjoint();

  auto embed = [&](const CMatrix& raw) {
    CMatrix out(embDim, raw.cols());
    out.topRows(m) = raw.topRows(m);
    out.bottomRows(space.dim_embedded()) = space.embed(raw.bottomRows(space.dim_raw()));
    return out;
  };
  auto vhat = [&](int j, const CMatrix& raw) {
    CMatrix out(rawDim, raw.cols());
    const CMatrix h = raw.topRows(m);
    out.topRows(m) = c[j - 1] * h;
    out.bottomRows(space.dim_raw()) = space.shift(j, raw.bottomRows(space.dim_raw()));
    if (dc.defect > 0) {
      const CMatrix ell = qAdj * (dc.coordinates.middleCols((j - 1) * m, m) * h);
      for (int k = 0; k < theta.dimL; ++k) out.row(m + ge.fock_index(0, k)) += ell.row(k);
    }
    return out;
  };
  auto project = [&](CMatrix raw) {
    const CMatrix zeta = space.w_adjoint(raw.bottomRows(space.dim_raw()));
    raw.bottomRows(space.dim_raw()) -= space.w_raw(zeta);
    return raw;
  };

  OrderedBasis basis(rawDim, embDim, default_rank_tol());
  for (Eigen::Index i = 0; i < m; ++i) {
    CVector e = CVector::Zero(rawDim);
    e(i) = 1.0;
    basis.add(e, e.head(embDim));
  }
  Eigen::Index layerStart = 0, layerEnd = basis.size();
  Eigen::Index exact = -1;
  bool finite = false;
  for (int layer = 1; layer <= nReport; ++layer) {
    if (layer == nReport) exact = basis.size();
    const CMatrix prev = basis.raw().middleCols(layerStart, layerEnd - layerStart);
    for (int j = 1; j <= d; ++j) {
      const CMatrix cand = project(vhat(j, prev));
      const CMatrix candEmb = embed(cand);
      for (Eigen::Index k = 0; k < cand.cols(); ++k) basis.add(cand.col(k), candEmb.col(k));
    }
    layerStart = layerEnd;
    layerEnd = basis.size();
    if (layerStart == layerEnd) {
      finite = true;
      break;
    }
  }
  const Eigen::Index n = basis.size();
  if (finite || exact < 0) exact = n;

  const CMatrix braw = basis.raw();
  const CMatrix bemb = basis.embedded();
  std::vector<CMatrix> blocks;
  for (int j = 1; j <= d; ++j) blocks.push_back(n ? CMatrix(bemb.adjoint() * embed(vhat(j, braw))) : CMatrix(0, 0));
  return LiftOnce{RowTuple(blocks, "H_E"), exact, finite};
}

}  // namespace

LiftResult map_E(const RowTuple& C, const Symbol& theta, const LiftPolicy& policy,
                 const std::optional<CMatrix>& identification) {
  validate_policy(policy.nBuild, policy.nReport, policy.buffer);
  if (theta.d != C.d) fail(ErrorKind::DimensionMismatch, "symbol and contraction disagree on d");
  if (!is_row_contraction(C).ok) fail(ErrorKind::InvalidInput, "C is not a row contraction");
  const int defectC = defect(C).defect;
  if (theta.dimL != defectC)
    fail(ErrorKind::DefectMismatch,
         "symbol target has dimension " + std::to_string(theta.dimL) + " but defect(C) = " + std::to_string(defectC));
  CMatrix q = CMatrix::Identity(defectC, defectC);
  if (identification) {
    q = *identification;
    if (q.rows() != defectC || q.cols() != defectC ||
        (q.adjoint() * q - CMatrix::Identity(defectC, defectC)).cwiseAbs().maxCoeff() > 1e-10)
      fail(ErrorKind::InvalidInput, "identification must be a unitary on the defect space");
  }

  LiftResult r;
  r.certificate = certify_contractive(theta, policy.nBuild);
  if (!r.certificate.certified)
    fail(ErrorKind::NotContractiveAtTruncation, "sigma_max " + std::to_string(r.certificate.sigmaMax) + " exceeds 1");

  const LiftOnce a = lift_once(C, theta, q, policy.nBuild, policy.nReport);
  const LiftOnce b = lift_once(C, theta, q, policy.nBuild + 1, policy.nReport);
  r.stabilizationResidual = tuple_diff(a.E, b.E);
  if (a.exactDim != b.exactDim) r.stabilizationResidual = std::numeric_limits<double>::infinity();
  if (!(r.stabilizationResidual <= policy.stabilizationTol))
    fail(ErrorKind::StabilizationFailure,
         "liftings at N and N+1 differ by " + std::to_string(r.stabilizationResidual));
  r.finite = a.finite;
  r.lifting = Lifting::from_tuple(a.E, C.dim, a.exactDim, 1e-8);
  return r;
}

// ---------------------------------------------------------------------------------------------
// M: lifting -> characteristic function

namespace {

// theta_0 = D^*, theta_{j beta} = (F ι_j X_beta H)^* with X_{j beta} = X_j X_beta.
// Returns the symbol and the degree through which it is exact.
std::pair<Symbol, int> coefficient_series(const RowTuple& x, Eigen::Index exact, const CMatrix& f, const CMatrix& h,
                                          const CMatrix& dvac, int degree) {
  const int d = x.d;
  const int dimD = static_cast<int>(f.rows());
  const int dimL = static_cast<int>(h.cols());
  Symbol s(d, dimD, dimL);
  s.set(Word{}, dvac.adjoint());
  std::map<Word, CMatrix> y{{Word{}, h}};
  const double scale = std::max(1.0, h.size() ? h.cwiseAbs().maxCoeff() : 0.0);
  int reached = 0;
  for (int len = 0; len < degree; ++len) {
    std::map<Word, CMatrix> next;
    bool leaked = false;
    for (const auto& [beta, yb] : y)
      if (exact < yb.rows() && yb.bottomRows(yb.rows() - exact).cwiseAbs().maxCoeff() > 1e-12 * scale) leaked = true;
    if (leaked) break;
    for (const auto& [beta, yb] : y) {
      const CMatrix top = yb.topRows(exact);
      for (int j = 1; j <= d; ++j) {
        Word w;
        w.letters.push_back(j);
        w.letters.insert(w.letters.end(), beta.letters.begin(), beta.letters.end());
        if (dimD && dimL) s.set(w, (f.middleCols((j - 1) * exact, exact) * top).adjoint());
        next.emplace(w, x[j - 1].leftCols(exact) * top);
      }
    }
    y = std::move(next);
    reached = len + 1;
  }
  return {s.pruned(0.0), reached};
}

}  // namespace

CharFnResult map_M(const Lifting& e, int degree) {
  if (degree < 0) fail(ErrorKind::DegreeOutOfRange, "degree must be non-negative");
  const RowTuple et = e.E();
  const Eigen::Index m = e.dim_C(), ex = e.exactDim, n = e.dim();
  const int d = e.d();
  if (ex < m) fail(ErrorKind::InvalidInput, "exact part of the lifting must contain H_C");

  const CMatrix rex = row_of(et, ex);
  const CMatrix ge = CMatrix::Identity(d * ex, d * ex) - rex.adjoint() * rex;
  const PsdFactor fe = psd_factor(ge);
  const PsdFactor fc = psd_factor(defect_gram(e.C));
  const Eigen::Index l = fc.rank();
  const Eigen::Index r = fe.rank();

  CMatrix h = CMatrix::Zero(n, l);
  CMatrix dvac = CMatrix::Zero(r, l);
  for (Eigen::Index k = 0; k < l; ++k) {
    const CVector xi = fc.basis.col(k) / std::sqrt(fc.values(k));
    CVector lifted = CVector::Zero(d * ex);
    for (int j = 0; j < d; ++j) {
      const CVector part = xi.segment(j * m, m);
      h.col(k) += et[j].leftCols(m) * part;
      lifted.segment(j * ex, m) = part;
    }
    h.col(k).head(m).setZero();
    if (r) dvac.col(k) = fe.factor * lifted;
  }

  CharFnResult res;
  auto [symbol, reached] = coefficient_series(et, ex, fe.factor, h, dvac, degree);
  res.symbol = std::move(symbol);
  res.exactDegree = reached;
  res.lcBasis = CMatrix(n + r, l);
  res.lcBasis.topRows(n) = h;
  res.lcBasis.bottomRows(r) = dvac;
  res.defectBasisE = fe.basis;
  res.defectFactorE = fe.factor;
  return res;
}

MinimalityResult is_minimal(const Lifting& e, int degree) {
  const RowTuple et = e.E();
  const Eigen::Index n = e.dim();
  MinimalityResult r;
  CMatrix q(n, 0);
  auto add = [&](CVector v) {
    const double nrm0 = v.norm();
    for (int pass = 0; pass < 2; ++pass) v -= q * (q.adjoint() * v);
    if (v.norm() <= 1e-10 * std::max(1.0, nrm0)) return false;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v / v.norm();
    return true;
  };
  CMatrix layer = CMatrix::Identity(n, e.dim_C());
  for (Eigen::Index i = 0; i < layer.cols(); ++i) add(layer.col(i));
  const int horizon = degree < 0 ? static_cast<int>(n) : degree;
  for (int len = 1; len <= horizon && q.cols() < n; ++len) {
    const Eigen::Index before = q.cols();
    CMatrix next(n, 0);
    for (int j = 0; j < e.d(); ++j) {
      const CMatrix img = et[j] * layer;
      for (Eigen::Index c = 0; c < img.cols(); ++c)
        if (add(img.col(c))) {
          next.conservativeResize(Eigen::NoChange, next.cols() + 1);
          next.col(next.cols() - 1) = q.col(q.cols() - 1);
        }
    }
    if (q.cols() == before) break;
    layer = next;
  }
  r.reachedDim = q.cols();
  r.minimal = r.reachedDim == n;
  if (!r.minimal) {
    const CMatrix comp = detail::null_basis(q.adjoint(), 1e-10, 1.0);
    r.witness = comp.col(0);
  }
  return r;
}

RoundtripMEReport roundtrip_ME(const RowTuple& C, const Symbol& theta, const LiftPolicy& policy) {
  RoundtripMEReport r;
  r.dimDIn = theta.dimD;
  r.injective = predicates(theta).injective;
  const LiftResult lr = map_E(C, theta, policy);
  const int want = lr.finite ? policy.nReport : policy.nReport - 1;
  const CharFnResult cf = map_M(lr.lifting, want);
  r.comparedDegree = std::min(want, cf.exactDegree);
  r.dimDOut = cf.symbol.dimD;
  r.dimsMatch = r.dimDIn == r.dimDOut;
  if (!r.dimsMatch) {
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  const EquivalenceResult eq = symbols_equivalent(theta.truncated(r.comparedDegree), cf.symbol.truncated(r.comparedDegree),
                                                  1e-7, r.comparedDegree);
  r.residual = eq.residual;
  r.alignment = eq.v;
  return r;
}

RoundtripEMReport roundtrip_EM(const Lifting& e, const LiftPolicy& policy, int degree) {
  RoundtripEMReport r;
  r.minimal = is_minimal(e).minimal;
  r.dimE = e.dim();
  const CharFnResult cf = map_M(e, degree);
  const Symbol theta = cf.symbol.pruned(1e-14);
  const LiftResult rebuilt = map_E(e.C, theta, policy);
  r.dimRebuilt = rebuilt.lifting.dim();
  r.dimsMatch = rebuilt.finite && r.dimRebuilt == r.dimE;
  const CharFnResult cf2 = map_M(rebuilt.lifting, degree);
  r.comparedDegree = std::min({degree, cf.exactDegree, cf2.exactDegree});
  if (!rebuilt.finite) r.comparedDegree = std::min(r.comparedDegree, policy.nReport - 1);
  if (cf.symbol.dimD != cf2.symbol.dimD) {
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  const EquivalenceResult eq = symbols_equivalent(cf.symbol.truncated(r.comparedDegree),
                                                  cf2.symbol.truncated(r.comparedDegree), 1e-7, r.comparedDegree);
  r.residual = eq.residual;
  r.symbolsEquivalent = eq.equivalent;
  return r;
}

// ---------------------------------------------------------------------------------------------
// Equivalence and factorization

namespace {

// Columns E_alpha x_i over graded-lex words alpha with |alpha| <= len.
CMatrix krylov_matrix(const RowTuple& e, Eigen::Index m, int len) {
  const Eigen::Index words = fock_dim(e.d, len);
  CMatrix out(e.dim, words * m);
  FockIndex idx(e.d, len);
  out.leftCols(m) = CMatrix::Identity(e.dim, m);
  for (Eigen::Index w = 1; w < words; ++w) {
    const Word a = idx.word_at(w);
    Word rest;
    rest.letters.assign(a.letters.begin() + 1, a.letters.end());
    out.middleCols(w * m, m) = e[a.letters.front() - 1] * out.middleCols(idx.index_of(rest) * m, m);
  }
  return out;
}

}  // namespace

LiftingEquivalence liftings_equivalent(const Lifting& e, const Lifting& ePrime, double tol) {
  if (!is_minimal(e).minimal || !is_minimal(ePrime).minimal)
    fail(ErrorKind::NotMinimal, "liftings_equivalent needs minimal liftings");
  if (e.d() != ePrime.d() || e.dim_C() != ePrime.dim_C() || tuple_diff(e.C, ePrime.C) > tol)
    fail(ErrorKind::InvalidInput, "liftings must extend the same C");
  LiftingEquivalence r;
  const int k = static_cast<int>(e.dim() + ePrime.dim()) + 1;
  const CharFnResult a = map_M(e, k);
  const CharFnResult b = map_M(ePrime, k);
  const int upTo = std::min(a.exactDegree, b.exactDegree);
  if (a.symbol.dimD != b.symbol.dimD || e.dim() != ePrime.dim()) {
    r.symbols.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  r.symbols = symbols_equivalent(a.symbol, b.symbol, tol, upTo);
  if (!r.symbols.equivalent || !e.finite() || !ePrime.finite()) return r;

  int len = 0;
  while (len < static_cast<int>(e.dim()) && fock_dim(e.d(), len + 1) * e.dim_C() <= 4096) ++len;
  const CMatrix kr = krylov_matrix(e.E(), e.dim_C(), len);
  const CMatrix kp = krylov_matrix(ePrime.E(), e.dim_C(), len);
  r.u = kp * kr.completeOrthogonalDecomposition().pseudoInverse();
  const RowTuple et = e.E(), ept = ePrime.E();
  double res = (r.u.adjoint() * r.u - CMatrix::Identity(e.dim(), e.dim())).cwiseAbs().maxCoeff();
  for (int j = 0; j < e.d(); ++j) res = std::max(res, (r.u * et[j] - ept[j] * r.u).cwiseAbs().maxCoeff());
  r.intertwiningResidual = res;
  r.equivalent = res <= std::max(tol, 1e-6);
  return r;
}

FactorReport factor_check(const RowTuple& C, const Symbol& theta1, const Symbol& theta2, const LiftPolicy& policy) {
  if (theta2.dimL != theta1.dimD) fail(ErrorKind::DimensionMismatch, "theta2 must land in the domain of theta1");
  FactorReport r;
  const LiftResult first = map_E(C, theta1, policy);
  if (!first.finite) fail(ErrorKind::InvalidInput, "the first lifting must be finite-dimensional");
  r.dimIntermediate = first.lifting.dim();
  const RowTuple e = first.lifting.E();

  // Express theta2 in the pinned defect coordinates of E.
  const CharFnResult cf1 = map_M(first.lifting, std::max(1, theta1.degree()) + 2);
  if (cf1.symbol.dimD != theta1.dimD) fail(ErrorKind::InvalidInput, "theta1 must be injective");
  const EquivalenceResult align = symbols_equivalent(theta1, cf1.symbol, 1e-6, cf1.exactDegree);
  if (!align.equivalent) fail(ErrorKind::InconsistentWithTheorem, "first lifting does not reproduce theta1");
  const Symbol theta2E = left_multiply(align.v, theta2);

  const LiftResult second = map_E(e, theta2E, policy);
  const Lifting overC = Lifting::from_tuple(second.lifting.E(), C.dim, second.lifting.exactDim, 1e-8);
  r.dimFinal = overC.dim();
  const int want = second.finite ? policy.nReport : policy.nReport - 1;
  const CharFnResult cf = map_M(overC, want);
  r.comparedDegree = std::min(want, cf.exactDegree);
  const Symbol product = compose(theta1, theta2);
  if (cf.symbol.dimD != product.dimD) {
    r.residual = std::numeric_limits<double>::infinity();
  } else {
    const EquivalenceResult eq = symbols_equivalent(product.truncated(r.comparedDegree),
                                                    cf.symbol.truncated(r.comparedDegree), 1e-6, r.comparedDegree);
    r.residual = eq.residual;
    r.equivalent = eq.equivalent;
  }
  r.minimal = is_minimal(overC).minimal;
  return r;
}

CncCharFn charfn_cnc(const RowTuple& a, int degree) {
  if (degree < 0) fail(ErrorKind::DegreeOutOfRange, "degree must be non-negative");
  if (!is_row_contraction(a).ok) fail(ErrorKind::InvalidInput, "A is not a row contraction");
  const Eigen::Index n = a.dim;
  const PsdFactor fa = psd_factor(defect_gram(a));
  const CMatrix row = a.row();
  const PsdFactor fs = psd_factor(CMatrix::Identity(n, n) - row * row.adjoint());
  const Eigen::Index l = fs.rank();

  CMatrix h(n, l), dvac(fa.rank(), l);
  for (Eigen::Index k = 0; k < l; ++k) {
    const CVector xi = fs.basis.col(k) / std::sqrt(fs.values(k));
    h.col(k) = xi - row * (row.adjoint() * xi);
    if (fa.rank()) dvac.col(k) = -fa.factor * (row.adjoint() * xi);
  }
  CncCharFn r;
  r.symbol = coefficient_series(a, n, fa.factor, h, dvac, degree).first;
  r.cncCertifiedAt = cnc_certificate(a, static_cast<int>(n) + 2);
  return r;
}

// ---------------------------------------------------------------------------------------------
// Bridge to the characteristic function of the corner

std::string BridgeReport::to_string() const {
  std::ostringstream os;
  os << predicates.to_string() << " | route=" << (finiteRoute ? "finite" : "model") << " L_E=L_A:" << LEeqLA
     << " L_C=L_*A:" << LCeqLstar << " predicted=" << predicted << " geometric=" << geometric
     << " conclusive=" << conclusive;
  if (charfnResidual) os << " charfnResidual=" << *charfnResidual;
  return os.str();
}

BridgeReport theorem45_bridge(const Lifting& e, const LiftPolicy& policy) {
  if (!is_minimal(e).minimal) fail(ErrorKind::NotMinimal, "bridge needs a minimal lifting");
  BridgeReport r;
  const int d = e.d();
  const Eigen::Index m = e.dim_C(), na = e.dim_A();
  r.finiteRoute = e.finite();

  int k = 1;
  if (r.finiteRoute) {
    while (k < 60 && fock_dim(d, k + 1) <= 2048) ++k;
  } else {
    k = policy.nReport - 1;
  }
  const CharFnResult cf = map_M(e, k);
  const Symbol theta = cf.symbol.pruned(1e-14);
  r.predicates = predicates(theta);
  r.predicted = r.predicates.purelyContractive && r.predicates.szegoOperator == SzegoVerdict::Holds;

  if (r.finiteRoute) {
    const Eigen::Index ex = e.exactDim;
    const Eigen::Index rE = cf.defectFactorE.rows();
    // D_E restricted to the H_A summands.
    CMatrix fa(rE, d * na);
    for (int j = 0; j < d; ++j) fa.middleCols(j * na, na) = cf.defectFactorE.middleCols(j * ex + m, na);
    const Subspace la = Subspace::span_of(fa, default_rank_tol(), 1.0);
    r.LEeqLA = la.dim() == rE;

    // ker (V^A)^* on H_A + e_0 (x) L_A, in coordinates (H_A, D_E).
    const RowTuple at = e.A;
    const Eigen::Index q = la.dim();
    CMatrix stack(d * na, na + q);
    for (int j = 0; j < d; ++j) {
      stack.block(j * na, 0, na, na) = at[j].adjoint();
      stack.block(j * na, na, na, q) = (fa.middleCols(j * na, na)).adjoint() * la.basis();
    }
    CMatrix kerRaw = na + q ? detail::null_basis(stack, 1e-9) : CMatrix(0, 0);
    CMatrix ker(na + rE, kerRaw.cols());
    ker.topRows(na) = kerRaw.topRows(na);
    ker.bottomRows(rE) = la.basis() * kerRaw.bottomRows(q);
    const CMatrix lcRows = [&] {
      CMatrix x(na + rE, cf.lcBasis.cols());
      x.topRows(na) = cf.lcBasis.middleRows(m, na);
      x.bottomRows(rE) = cf.lcBasis.bottomRows(rE);
      return x;
    }();
    r.LCeqLstar = subspaces_equal(Subspace::span_of(lcRows), Subspace::span_of(ker));
    r.conclusive = true;
  } else {
    // Model geometry: L_A inside L_E from the model, and ker V^* = e_0 (x) L + [Delta(all) - Delta(deg >= 1)].
    ModelPolicy mp{policy.nBuild, policy.nReport, policy.buffer, policy.stabilizationTol};
    const FunctionalModel model = build_model(theta, mp);
    const ClassifyReport cls = classify(model, false);
    r.LEeqLA = cls.LAeqLE;
    r.LCeqLstar = r.predicates.szegoOperator == SzegoVerdict::Holds;
    r.conclusive = r.predicates.szegoOperator != SzegoVerdict::Inconclusive;
  }
  r.geometric = r.LEeqLA && r.LCeqLstar;
  if (r.conclusive && r.predicted != r.geometric)
    fail(ErrorKind::InconsistentWithTheorem, "bridge mismatch: " + r.to_string());

  if (r.predicted && e.finite()) {
    const CncCharFn cnc = charfn_cnc(e.A, k);
    const int upTo = std::min(k, cf.exactDegree);
    const CoincidenceResult co = symbols_coincide(theta.truncated(upTo), cnc.symbol.truncated(upTo), 1e-7, upTo);
    r.charfnResidual = co.residual;
  }
  return r;
}

RowTuple contraction_with_defect(int d, int q) {
  if (d < 1 || q < 0) fail(ErrorKind::InvalidInput, "d >= 1 and defect >= 0 required");
  if (q == 0) fail(ErrorKind::InvalidInput, "defect 0 needs a row isometry; not produced here");
  const int m = (q + d - 1) / d;
  const int ones = d * m - q;
  if (ones > m) fail(ErrorKind::InvalidInput, "defect not reachable on the minimal space");
  // Row operator C^{dm} -> C^m with `ones` singular values 1 and the rest 1/2.
  CMatrix row = CMatrix::Zero(m, d * m);
  for (int i = 0; i < m; ++i) row(i, i) = i < ones ? 1.0 : 0.5;
  std::vector<CMatrix> blocks;
  for (int j = 0; j < d; ++j) blocks.push_back(row.middleCols(j * m, m));
  return RowTuple(blocks, "H_C");
}

}  // namespace liftlab
