#include "liftlab/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace liftlab {

Subspace::Subspace(Eigen::Index ambientDim, CMatrix basis, double tol)
    : ambient_(ambientDim), basis_(std::move(basis)), tol_(tol) {
  if (basis_.rows() != ambient_) fail(ErrorKind::AmbientMismatch, "basis rows differ from ambient dimension");
  if (basis_.cols() > ambient_) fail(ErrorKind::DimensionMismatch, "more basis vectors than ambient dimension");
}

Subspace Subspace::span_of(const CMatrix& vectors, double tol) {
  return Subspace(vectors.rows(), detail::range_basis(vectors, tol), tol);
}

Subspace Subspace::span_of(const CMatrix& vectors, double tol, double floorScale) {
  return Subspace(vectors.rows(), detail::range_basis(vectors, tol, floorScale), tol);
}

Subspace Subspace::zero(Eigen::Index ambientDim, double tol) {
  return Subspace(ambientDim, CMatrix(ambientDim, 0), tol);
}

Subspace Subspace::whole(Eigen::Index ambientDim, double tol) {
  return Subspace(ambientDim, CMatrix::Identity(ambientDim, ambientDim), tol);
}

CMatrix Subspace::project(const CMatrix& x) const {
  if (x.rows() != ambient_) fail(ErrorKind::AmbientMismatch, "projected vectors have wrong length");
  return basis_ * (basis_.adjoint() * x);
}

Subspace Subspace::complement() const {
  if (dim() == 0) return whole(ambient_, tol_);
  return Subspace(ambient_, detail::null_basis(basis_.adjoint(), 1e-9), tol_);
}

CMatrix psd_sqrt(const CMatrix& m, double clipTol) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "psd_sqrt needs a square matrix");
  if (m.rows() == 0) return m;
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector ev = es.eigenvalues();
  if (ev(0) < -clipTol)
    fail(ErrorKind::NotPSD, "eigenvalue " + std::to_string(ev(0)) + " below clip tolerance");
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(0.0, ev(i)));
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

void check_ambient(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) fail(ErrorKind::AmbientMismatch, "subspaces live in different spaces");
}

}  // namespace

Subspace span(const Subspace& s, const Subspace& t) {
  check_ambient(s, t);
  CMatrix all(s.ambient_dim(), s.dim() + t.dim());
  all << s.basis(), t.basis();
  return Subspace::span_of(all, std::max(s.tol(), t.tol()));
}

Subspace span(const Subspace& s, const CMatrix& vectors) {
  if (vectors.rows() != s.ambient_dim()) fail(ErrorKind::AmbientMismatch, "vectors have wrong length");
  CMatrix all(s.ambient_dim(), s.dim() + vectors.cols());
  all << s.basis(), vectors;
  return Subspace::span_of(all, s.tol());
}

Subspace ominus(const Subspace& s, const Subspace& t) {
  check_ambient(s, t);
  if (s.dim() == 0 || t.dim() == 0) return s;
  const CMatrix coeff = detail::null_basis(t.basis().adjoint() * s.basis(), 1e-9, 1.0);
  CMatrix b = s.basis() * coeff;
  detail::pin_column_phases(b);
  return Subspace(s.ambient_dim(), b, s.tol());
}

Subspace intersect(const Subspace& s, const Subspace& t, double tol) {
  check_ambient(s, t);
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(s.ambient_dim(), s.tol());
  Eigen::JacobiSVD<CMatrix> svd(s.basis().adjoint() * t.basis(), Eigen::ComputeThinU);
  const RVector& sv = svd.singularValues();
  Eigen::Index k = 0;
  while (k < sv.size() && sv(k) >= 1.0 - tol) ++k;
  CMatrix b = s.basis() * svd.matrixU().leftCols(k);
  detail::pin_column_phases(b);
  return Subspace(s.ambient_dim(), b, s.tol());
}

CMatrix project(const Subspace& s, const CMatrix& x) { return s.project(x); }

Subspace image(const CMatrix& op, const Subspace& s, double tol) {
  if (op.cols() != s.ambient_dim()) fail(ErrorKind::AmbientMismatch, "operator domain differs from subspace ambient");
  return Subspace::span_of(op * s.basis(), tol);
}

double containment_residual(const Subspace& s, const Subspace& t) {
  check_ambient(s, t);
  if (s.dim() == 0) return 0.0;
  return op_norm(s.basis() - t.project(s.basis()));
}

double subspace_distance(const Subspace& s, const Subspace& t) {
  if (s.dim() != t.dim()) return std::numeric_limits<double>::infinity();
  return std::max(containment_residual(s, t), containment_residual(t, s));
}

PrincipalAngleReport principal_angles(const Subspace& s, const Subspace& t, double tol) {
  check_ambient(s, t);
  PrincipalAngleReport r;
  if (s.dim() > 0 && t.dim() > 0) {
    Eigen::JacobiSVD<CMatrix> svd(s.basis().adjoint() * t.basis());
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      r.angles.push_back(std::acos(std::clamp(svd.singularValues()(i), 0.0, 1.0)));
    std::sort(r.angles.begin(), r.angles.end(), std::greater<>());
  }
  r.containmentResidual = std::max(containment_residual(s, t), containment_residual(t, s));
  r.equal = s.dim() == t.dim() && r.containmentResidual <= tol;
  return r;
}

bool subspaces_equal(const Subspace& s, const Subspace& t, double tol) {
  return principal_angles(s, t, tol).equal;
}

Subspace kernel_adjoint_restricted(const CMatrix& t, const Subspace& k1, const Subspace& k2, double tol) {
  if (t.cols() != k1.ambient_dim() || t.rows() != k2.ambient_dim())
    fail(ErrorKind::AmbientMismatch, "operator does not map between the given ambients");
  const CMatrix tk1 = t * k1.basis();
  const double scale = std::max(1.0, op_norm(t));
  if (op_norm(tk1 - k2.project(tk1)) > tol * scale) fail(ErrorKind::NotInvariant, "T K1 is not inside K2");
  if (k2.dim() == 0) return Subspace::zero(k2.ambient_dim(), k2.tol());
  if (k1.dim() == 0) return k2;
  // xi = K2 y with P_K1 T* xi = 0.
  const CMatrix y = detail::null_basis(k1.basis().adjoint() * t.adjoint() * k2.basis(), 1e-9, scale);
  CMatrix b = k2.basis() * y;
  detail::pin_column_phases(b);
  return Subspace(k2.ambient_dim(), b, k2.tol());
}

double LemmaInvReport::max_residual() const {
  return std::max({residualI, residualII, residualIIISpan, residualIIISum, orthogonality});
}

std::string LemmaInvReport::to_string() const {
  std::ostringstream os;
  os << "dim ker=" << dimKernelRestricted << " dim L=" << dimL << " dim cap=" << dimKernelCapK2
     << " res(i)=" << residualI << " res(ii)=" << residualII << " res(iii)=" << residualIIISpan << "/"
     << residualIIISum << " orth=" << orthogonality;
  return os.str();
}

LemmaInvReport verify_lemma_inv(const CMatrix& t, const Subspace& k1, const Subspace& k2, double tol) {
  const Eigen::Index n1 = t.cols();
  if (op_norm(t.adjoint() * t - CMatrix::Identity(n1, n1)) > 1e-10)
    fail(ErrorKind::NotIsometry, "verify_lemma_inv needs an isometry");
  const Subspace kerRestricted = kernel_adjoint_restricted(t, k1, k2, tol);

  LemmaInvReport r;
  r.dimKernelRestricted = kerRestricted.dim();

  // (i): null space of the restricted adjoint in K2 coordinates.
  const CMatrix tTilde = k2.basis().adjoint() * t * k1.basis();
  const Subspace direct(k2.ambient_dim(),
                        k2.dim() == 0 ? CMatrix(k2.ambient_dim(), 0)
                                      : CMatrix(k2.basis() * detail::null_basis(tTilde.adjoint(), 1e-9, 1.0)));
  r.residualI = subspace_distance(kerRestricted, direct);

  const Subspace kerTstar(t.rows(), detail::null_basis(t.adjoint(), 1e-9, 1.0));
  const Subspace projected = Subspace::span_of(k2.project(kerTstar.basis()), 1e-9, 1.0);
  r.residualII = containment_residual(projected, kerRestricted);

  const Subspace n1s = k1.complement();
  const Subspace n2s = k2.complement();
  const Subspace l = ominus(span(n2s, t * n1s.basis()), n2s);
  const Subspace cap = intersect(kerTstar, k2);
  r.dimL = l.dim();
  r.dimKernelCapK2 = cap.dim();
  r.residualIIISpan = subspace_distance(span(l, projected), kerRestricted);
  r.residualIIISum = subspace_distance(span(l, cap), kerRestricted);
  r.orthogonality = (l.dim() && cap.dim()) ? op_norm(l.basis().adjoint() * cap.basis()) : 0.0;
  return r;
}

}  // namespace liftlab
