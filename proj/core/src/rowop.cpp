#include "liftlab/rowop.hpp"

#include <algorithm>
#include <cmath>

namespace liftlab {

RowTuple::RowTuple(std::vector<CMatrix> b, std::string tag) : blocks(std::move(b)), spaceTag(std::move(tag)) {
  if (blocks.empty()) fail(ErrorKind::InvalidInput, "row tuple needs at least one block");
  d = static_cast<int>(blocks.size());
  dim = blocks.front().rows();
  for (const auto& m : blocks)
    if (m.rows() != dim || m.cols() != dim) fail(ErrorKind::DimensionMismatch, "row tuple blocks must be square of equal size");
}

RowTuple RowTuple::zero(int d, Eigen::Index dim, std::string tag) {
  return RowTuple(std::vector<CMatrix>(static_cast<std::size_t>(d), CMatrix::Zero(dim, dim)), std::move(tag));
}

CMatrix RowTuple::row() const {
  CMatrix r(dim, dim * d);
  for (int j = 0; j < d; ++j) r.middleCols(j * dim, dim) = blocks[j];
  return r;
}

CMatrix RowTuple::word(const Word& w) const {
  CMatrix out = CMatrix::Identity(dim, dim);
  for (int l : w.letters) {
    if (l < 1 || l > d) fail(ErrorKind::InvalidInput, "letter outside 1..d");
    out = out * blocks[l - 1];
  }
  return out;
}

double RowTuple::row_norm() const { return op_norm(row()); }

ContractionCheck is_row_contraction(const RowTuple& t, double tol) {
  if (t.dim == 0) return {true, 1.0};
  CMatrix q = CMatrix::Zero(t.dim, t.dim);
  for (const auto& b : t.blocks) q += b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (q + q.adjoint()), Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  return {lmax <= 1.0 + tol, 1.0 - lmax};
}

bool is_row_isometry(const RowTuple& t, double tol) {
  const CMatrix r = t.row();
  return op_norm(r.adjoint() * r - CMatrix::Identity(r.cols(), r.cols())) <= tol;
}

PsdFactor psd_factor(const CMatrix& g, double floor, double clipTol) {
  const Eigen::Index n = g.rows();
  PsdFactor f;
  if (n == 0) {
    f.basis = CMatrix(0, 0);
    f.values = RVector(0);
    f.factor = CMatrix(0, 0);
    return f;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()));
  const RVector& ev = es.eigenvalues();
  if (ev(0) < -clipTol) fail(ErrorKind::NotPSD, "eigenvalue " + std::to_string(ev(0)) + " below clip tolerance");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = n - 1; i >= 0; --i)
    if (ev(i) > floor) keep.push_back(i);
  const auto r = static_cast<Eigen::Index>(keep.size());
  f.basis.resize(n, r);
  f.values.resize(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    f.basis.col(k) = es.eigenvectors().col(keep[k]);
    f.values(k) = ev(keep[k]);
  }
  detail::pin_column_phases(f.basis);
  f.factor = f.values.cwiseSqrt().asDiagonal() * f.basis.adjoint();
  return f;
}

CMatrix defect_gram(const RowTuple& t) {
  const CMatrix r = t.row();
  return CMatrix::Identity(r.cols(), r.cols()) - r.adjoint() * r;
}

DefectData defect(const RowTuple& t) {
  const CMatrix g = defect_gram(t);
  const PsdFactor f = psd_factor(g);
  DefectData dd;
  dd.defectOperator = f.basis * f.values.cwiseSqrt().asDiagonal() * f.basis.adjoint();
  dd.defectSpace = Subspace(g.rows(), f.basis);
  dd.defect = static_cast<int>(f.rank());
  dd.coordinates = f.factor;
  return dd;
}

Dilation::Dilation(RowTuple base, int N) : base_(std::move(base)), n_(N) {
  if (N < 0) fail(ErrorKind::InvalidInput, "dilation grade must be non-negative");
  if (!is_row_contraction(base_).ok) fail(ErrorKind::NotPSD, "dilation needs a row contraction");
  defect_ = liftlab::defect(base_);
  for (int j = 1; j <= base_.d; ++j) blocks_.push_back(block(j, N));

  const Grade g1 = grade(1);
  unitary_ = CMatrix::Zero(g1.dim(), defect_.defect);
  for (int k = 0; k < defect_.defect; ++k) unitary_(g1.fock_index(0, k), k) = 1.0;
  wandering_ = Subspace(g1.dim(), unitary_);
}

Eigen::Index Dilation::space_dim(int n) const { return grade(n).dim(); }

GradedOperator Dilation::block(int j, int n) const {
  if (j < 1 || j > base_.d) fail(ErrorKind::InvalidInput, "dilation letter outside 1..d");
  const Grade from = grade(n);
  const Grade to = grade(n + 1);
  const Eigen::Index m = base_.dim;
  const int k = defect_.defect;
  std::vector<Eigen::Triplet<cplx>> trip;
  const CMatrix& tj = base_[j - 1];
  for (Eigen::Index c = 0; c < m; ++c)
    for (Eigen::Index r = 0; r < m; ++r)
      if (tj(r, c) != cplx(0.0)) trip.emplace_back(r, c, tj(r, c));
  const CMatrix fj = defect_.coordinates.middleCols((j - 1) * m, m);
  for (Eigen::Index c = 0; c < m; ++c)
    for (int r = 0; r < k; ++r)
      if (fj(r, c) != cplx(0.0)) trip.emplace_back(to.fock_index(0, r), c, fj(r, c));
  FockIndex words(base_.d, n + 1);
  const Eigen::Index nWords = fock_dim(base_.d, n);
  for (Eigen::Index b = 0; b < nWords; ++b) {
    const Eigen::Index jb = words.prepend(j, b);
    for (int c = 0; c < k; ++c) trip.emplace_back(to.fock_index(jb, c), from.fock_index(b, c), 1.0);
  }
  GradedOperator op{SpMatrix(to.dim(), from.dim()), from, to, n};
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  return op;
}

CVector Dilation::apply(int j, const CVector& v, int n) const {
  const Grade from = grade(n);
  const Grade to = grade(n + 1);
  if (v.size() != from.dim()) fail(ErrorKind::AmbientMismatch, "vector does not match dilation grade");
  const Eigen::Index m = base_.dim;
  const int k = defect_.defect;
  CVector out = CVector::Zero(to.dim());
  out.head(m) = base_[j - 1] * v.head(m);
  if (k > 0) {
    out.segment(to.fock_index(0, 0), k) = defect_.coordinates.middleCols((j - 1) * m, m) * v.head(m);
    FockIndex words(base_.d, n + 1);
    const Eigen::Index nWords = fock_dim(base_.d, n);
    for (Eigen::Index b = 0; b < nWords; ++b)
      out.segment(to.fock_index(words.prepend(j, b), 0), k) = v.segment(from.fock_index(b, 0), k);
  }
  return out;
}

CVector Dilation::apply_word(const Word& w, const CVector& h) const {
  if (h.size() != base_.dim) fail(ErrorKind::AmbientMismatch, "apply_word expects a vector on H_T");
  // Grade 0 already carries the vacuum slot; pad before applying.
  CVector v = regrade(h, Grade{base_.d, -1, defect_.defect, base_.dim}, grade(0));
  int n = 0;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    v = apply(*it, v, n);
    ++n;
  }
  return v;
}

Dilation minimal_isometric_dilation(const RowTuple& t, int N) { return Dilation(t, N); }

std::optional<int> cnc_certificate(const RowTuple& a, int horizon, double tol) {
  const Eigen::Index m = a.dim;
  if (m == 0) return 0;
  CMatrix s = CMatrix::Identity(m, m);
  CMatrix q = CMatrix::Identity(m, m);
  for (int n = 1; n <= horizon; ++n) {
    CMatrix next = CMatrix::Zero(m, m);
    for (const auto& b : a.blocks) next += b * q * b.adjoint();
    q = next;
    const CMatrix gap = s.adjoint() * (CMatrix::Identity(m, m) - q) * s;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gap + gap.adjoint()));
    Eigen::Index keep = 0;
    while (keep < es.eigenvalues().size() && es.eigenvalues()(keep) <= tol) ++keep;
    s = s * es.eigenvectors().leftCols(keep);
    if (s.cols() == 0) return n;
  }
  return std::nullopt;
}

}  // namespace liftlab
