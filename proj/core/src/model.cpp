#include "liftlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace liftlab {

namespace {

SpMatrix within_shift(int j, const Grade& g) { return creation_within(j, g).matrix; }

// Numerical rank with a relative threshold.
Eigen::Index numerical_rank(const CMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  const double scale = std::max(1.0, s(0));
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol * scale) ++r;
  return r;
}

}  // namespace

SymbolSpace::SymbolSpace(const Symbol& theta, int nBuild) : theta_(theta), n_(nBuild), p_(theta.degree()) {
  if (nBuild < 0) fail(ErrorKind::DegreeOutOfRange, "model grade must be non-negative");
  m_ = assemble(theta_, n_).matrix;
  const CMatrix mm = CMatrix(SpMatrix(m_.adjoint()) * m_);
  const CMatrix g = CMatrix::Identity(mm.rows(), mm.cols()) - mm;
  try {
    f_ = psd_factor(g).factor;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotPSD) fail(ErrorKind::NotContractiveAtTruncation, e.what());
    throw;
  }
}

CMatrix SymbolSpace::embed(const CMatrix& raw) const {
  if (raw.rows() != dim_raw()) fail(ErrorKind::AmbientMismatch, "raw model vectors have wrong length");
  CMatrix out(dim_embedded(), raw.cols());
  out.topRows(dim_eta()) = raw.topRows(dim_eta());
  out.bottomRows(rank_delta()) = f_ * raw.bottomRows(dim_xi());
  return out;
}

CMatrix SymbolSpace::w_adjoint(const CMatrix& raw) const {
  const CMatrix eta = raw.topRows(dim_eta());
  const CMatrix xi = raw.bottomRows(dim_xi());
  return CMatrix(SpMatrix(m_.adjoint()) * eta) + f_.adjoint() * (f_ * xi);
}

CMatrix SymbolSpace::w_raw(const CMatrix& zeta) const {
  CMatrix out(dim_raw(), zeta.cols());
  out.topRows(dim_eta()) = m_ * zeta;
  out.bottomRows(dim_xi()) = zeta;
  return out;
}

CMatrix SymbolSpace::vacuum_w_raw() const {
  return w_raw(CMatrix::Identity(dim_xi(), theta_.dimD));
}

double SymbolSpace::top_mass(const CMatrix& raw, int nEta, int nXi) const {
  const Grade ge = grade_eta(), gx = grade_xi();
  const Eigen::Index eStart = nEta >= ge.N ? dim_eta() : fock_dim(ge.d, nEta) * ge.coef;
  const Eigen::Index xStart = nXi >= gx.N ? dim_xi() : fock_dim(gx.d, nXi) * gx.coef;
  double best = 0.0;
  for (Eigen::Index c = 0; c < raw.cols(); ++c) {
    const double me = raw.col(c).segment(eStart, dim_eta() - eStart).norm();
    const double mx = raw.col(c).segment(dim_eta() + xStart, dim_xi() - xStart).norm();
    best = std::max(best, std::hypot(me, mx));
  }
  return best;
}

CMatrix SymbolSpace::shift(int j, const CMatrix& raw) const {
  if (top_mass(raw, n_ + p_ - 1, n_ - 1) > 1e-12 * std::max(1.0, raw.norm()))
    fail(ErrorKind::DegreeOutOfRange, "shift would leave the model truncation");
  CMatrix out(dim_raw(), raw.cols());
  out.topRows(dim_eta()) = within_shift(j, grade_eta()) * raw.topRows(dim_eta());
  out.bottomRows(dim_xi()) = within_shift(j, grade_xi()) * raw.bottomRows(dim_xi());
  return out;
}

OrderedBasis::OrderedBasis(Eigen::Index rawDim, Eigen::Index embeddedDim, double tol)
    : raw_(rawDim, 0), emb_(embeddedDim, 0), tol_(tol) {}

bool OrderedBasis::add(const CVector& raw, const CVector& embedded) {
  CVector r = raw;
  CVector e = embedded;
  scale_ = std::max(scale_, e.norm());
  if (scale_ == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < count_; ++k) {
      const cplx c = emb_.col(k).dot(e);
      e -= c * emb_.col(k);
      r -= c * raw_.col(k);
    }
  }
  const double nrm = e.norm();
  if (nrm <= tol_ * scale_) return false;
  if (count_ == emb_.cols()) {
    const Eigen::Index grow = std::max<Eigen::Index>(8, count_);
    raw_.conservativeResize(Eigen::NoChange, count_ + grow);
    emb_.conservativeResize(Eigen::NoChange, count_ + grow);
  }
  raw_.col(count_) = r / nrm;
  emb_.col(count_) = e / nrm;
  ++count_;
  return true;
}

void validate_policy(int nBuild, int nReport, int buffer) {
  if (nReport < 0) fail(ErrorKind::InvalidInput, "report degree must be non-negative");
  if (buffer < 1) fail(ErrorKind::InvalidInput, "buffer must be at least 1");
  if (nReport + buffer > nBuild)
    fail(ErrorKind::InvalidInput, "policy needs report degree + buffer <= build grade");
}

namespace {

struct ModelCore {
  SymbolSpace space;
  OrderedBasis ha;
  RowTuple a;
  CMatrix laVectors;  // k x (d * dim HA)
  double leak = 0.0;
};

ModelCore build_core(const Symbol& theta, int nBuild, int nReport) {
  SymbolSpace space(theta, nBuild);
  const int d = theta.d;
  const int l = theta.dimL;
  const Grade ge = space.grade_eta();
  OrderedBasis ha(space.dim_raw(), space.dim_embedded(), default_rank_tol());

  // Probes P_{H_A}(e_alpha (x) l, 0); W^* (eta, 0) = M^* eta is exact for |alpha| <= nBuild.
  const Eigen::Index nProbeWords = fock_dim(d, nReport);
  for (Eigen::Index w = 0; w < nProbeWords; ++w) {
    for (int c = 0; c < l; ++c) {
      CVector raw = CVector::Zero(space.dim_raw());
      raw(ge.fock_index(w, c)) = 1.0;
      const CVector zeta = space.w_adjoint(raw).col(0);
      raw -= space.w_raw(zeta).col(0);
      ha.add(raw, space.embed(raw).col(0));
    }
  }

  const CMatrix basisRaw = ha.raw();
  const CMatrix basisEmb = ha.embedded();
  std::vector<CMatrix> blocks;
  CMatrix la(theta.dimD, d * ha.size());
  double leak = 0.0;
  for (int j = 1; j <= d; ++j) {
    const CMatrix moved = space.shift(j, basisRaw);
    blocks.push_back(basisEmb.adjoint() * space.embed(moved));
    const CMatrix zeta = space.w_adjoint(moved);
    la.middleCols((j - 1) * ha.size(), ha.size()) = zeta.topRows(theta.dimD);
    if (zeta.rows() > theta.dimD)
      leak = std::max(leak, zeta.bottomRows(zeta.rows() - theta.dimD).cwiseAbs().maxCoeff());
  }
  RowTuple a = ha.size() ? RowTuple(blocks, "H_A") : RowTuple(std::vector<CMatrix>(d, CMatrix(0, 0)), "H_A");
  return ModelCore{std::move(space), std::move(ha), std::move(a), std::move(la), leak};
}

double max_abs_diff(const RowTuple& a, const RowTuple& b) {
  if (a.dim != b.dim || a.d != b.d) return std::numeric_limits<double>::infinity();
  double r = 0.0;
  for (int j = 0; j < a.d; ++j)
    if (a.dim) r = std::max(r, (a[j] - b[j]).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace

FunctionalModel build_model(const Symbol& theta, const ModelPolicy& policy) {
  validate_policy(policy.nBuild, policy.nReport, policy.buffer);
  ContractivityCertificate cert = certify_contractive(theta, policy.nBuild);
  if (!cert.certified)
    fail(ErrorKind::NotContractiveAtTruncation, "sigma_max " + std::to_string(cert.sigmaMax) + " exceeds 1");

  ModelCore core = build_core(theta, policy.nBuild, policy.nReport);
  ModelCore next = build_core(theta, policy.nBuild + 1, policy.nReport);

  const int k = theta.dimD;
  const double rt = default_rank_tol();
  const Subspace laCoords = Subspace::span_of(core.laVectors, rt, 1.0);
  const Subspace laNext = Subspace::span_of(next.laVectors, rt, 1.0);
  const CMatrix theta0adj = theta.coeff(Word{}).adjoint();
  const Subspace leCoords = span(laCoords, theta0adj);
  const Subspace leNext = span(laNext, theta0adj);

  double stab = max_abs_diff(core.a, next.a);
  stab = std::max({stab, subspace_distance(laCoords, laNext), subspace_distance(leCoords, leNext)});
  if (!(stab <= policy.stabilizationTol))
    fail(ErrorKind::StabilizationFailure, "builds at N and N+1 differ by " + std::to_string(stab));

  const SymbolSpace& space = core.space;
  const Eigen::Index nEmb = space.dim_embedded();
  const CMatrix w0 = space.embed(space.vacuum_w_raw());
  CMatrix deltaAxes = CMatrix::Zero(nEmb, space.rank_delta());
  deltaAxes.bottomRows(space.rank_delta()).setIdentity();

  FunctionalModel m{theta, policy, space, cert,
                    Subspace(nEmb, deltaAxes),
                    Subspace::span_of(space.embed(space.w_raw(CMatrix::Identity(space.dim_xi(), space.dim_xi()))), rt),
                    Subspace(nEmb, core.ha.embedded()),
                    core.ha.raw(),
                    Subspace::span_of(w0 * laCoords.basis(), rt),
                    Subspace::span_of(w0 * leCoords.basis(), rt),
                    Subspace::span_of(w0, rt),
                    laCoords,
                    leCoords,
                    Subspace::whole(k),
                    core.a,
                    stab,
                    core.leak};
  return m;
}

std::string ClassifyReport::to_string() const {
  std::ostringstream os;
  os << "dim L_A=" << dimLA << " dim L_E=" << dimLE << " dim ker=" << dimKer << " | L_A=L_E:" << LAeqLE
     << "/" << condA << " L_E=ker:" << LEeqKer << "/" << condB << " L_A=ker:" << LAeqKer << "/" << condC;
  return os.str();
}

ClassifyReport classify(const FunctionalModel& model, bool throwOnMismatch) {
  const Symbol& theta = model.symbol;
  ClassifyReport r;
  r.predicates = predicates(theta);
  r.dimLA = model.LAcoords.dim();
  r.dimLE = model.LEcoords.dim();
  r.dimKer = model.kerCoords.dim();
  r.LAeqLE = subspaces_equal(model.LAcoords, model.LEcoords);
  r.LEeqKer = subspaces_equal(model.LEcoords, model.kerCoords);
  r.LAeqKer = subspaces_equal(model.LAcoords, model.kerCoords);
  const int p = theta.degree();
  r.condA = numerical_rank(theta.stacked(1, p), kPredicateTol) == numerical_rank(theta.stacked(0, p), kPredicateTol);
  r.condB = r.predicates.injective;
  r.condC = r.predicates.noConstantDirections;
  if (throwOnMismatch && !r.consistent())
    fail(ErrorKind::InconsistentWithTheorem, "trichotomy mismatch: " + r.to_string());
  return r;
}

ModelLemmaInstance model_lemma_instance(const SymbolSpace& space) {
  const Symbol& theta = space.symbol();
  const int d = theta.d, n = space.n_build(), p = space.degree();
  if (n < 1) fail(ErrorKind::DegreeOutOfRange, "lemma instance needs build grade >= 1");
  const Eigen::Index nXiM = static_cast<Eigen::Index>(theta.dimD) * fock_dim(d, n - 1);
  const Eigen::Index nEtaM = static_cast<Eigen::Index>(theta.dimL) * fock_dim(d, n - 1 + p);
  const Eigen::Index r = space.rank_delta();
  const CMatrix fMinus = space.F().leftCols(nXiM);
  const CMatrix q = detail::range_basis(fMinus, 1e-8);
  const CMatrix y = fMinus.completeOrthogonalDecomposition().solve(q);
  const Eigen::Index rq = q.cols();
  const Eigen::Index copy = nEtaM + rq;
  const Eigen::Index nEmb = space.dim_embedded();

  CMatrix t = CMatrix::Zero(nEmb, d * copy);
  for (int j = 1; j <= d; ++j) {
    const SpMatrix le = within_shift(j, space.grade_eta()).leftCols(nEtaM);
    const SpMatrix lx = within_shift(j, space.grade_xi()).leftCols(nXiM);
    t.block(0, (j - 1) * copy, space.dim_eta(), nEtaM) = CMatrix(le);
    if (r > 0 && rq > 0) t.block(space.dim_eta(), (j - 1) * copy + nEtaM, r, rq) = space.F() * (lx * y);
  }

  const CMatrix mDense = CMatrix(space.M());
  CMatrix wMinus(copy, nXiM);
  wMinus.topRows(nEtaM) = mDense.topLeftCorner(nEtaM, nXiM);
  if (rq > 0) wMinus.bottomRows(rq) = q.adjoint() * fMinus;
  CMatrix k1 = CMatrix::Zero(d * copy, d * nXiM);
  for (int j = 0; j < d; ++j) k1.block(j * copy, j * nXiM, copy, nXiM) = wMinus;
  const CMatrix w = space.embed(space.w_raw(CMatrix::Identity(space.dim_xi(), space.dim_xi())));
  return ModelLemmaInstance{t, Subspace::span_of(k1, 1e-10), Subspace::span_of(w, 1e-10)};
}

ModelPropsReport verify_model_props(const FunctionalModel& model) {
  ModelPropsReport r;
  const Subspace cap = intersect(model.HA, model.deltaRange);
  r.intersectionDim = cap.dim();
  r.intersectionResidual = (model.HA.dim() && model.deltaRange.dim())
                               ? op_norm(model.HA.basis().adjoint() * model.deltaRange.basis())
                               : 0.0;
  r.cncCertifiedAt = cnc_certificate(model.A, static_cast<int>(model.A.dim) + 2);
  try {
    // The lemma holds at any grade; keep the instance small.
    const Symbol& theta = model.symbol;
    int n = std::max(1, model.space.n_build());
    while (n > 1 && theta.dimL * fock_dim(theta.d, n + theta.degree()) > 400) --n;
    const ModelLemmaInstance inst =
        model_lemma_instance(n == model.space.n_build() ? model.space : SymbolSpace(theta, n));
    r.lemma = verify_lemma_inv(inst.T, inst.K1, inst.K2);
    r.lemmaEvaluated = true;
  } catch (const Error& e) {
    r.lemmaError = e.what();
  }
  return r;
}

}  // namespace liftlab
