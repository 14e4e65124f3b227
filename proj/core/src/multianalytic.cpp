#include "liftlab/multianalytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "liftlab/rowop.hpp"
#include "liftlab/subspace.hpp"

namespace liftlab {

Symbol::Symbol(int d_, int dimD_, int dimL_) : d(d_), dimD(dimD_), dimL(dimL_) {
  if (d < 1 || dimD < 0 || dimL < 0) fail(ErrorKind::InvalidInput, "symbol dimensions must be non-negative");
}

Symbol Symbol::constant(int d, const CMatrix& c) {
  Symbol s(d, static_cast<int>(c.cols()), static_cast<int>(c.rows()));
  s.set(Word{}, c);
  return s;
}

int Symbol::degree() const {
  int p = 0;
  for (const auto& [w, m] : coeffs)
    if (m.size() && m.cwiseAbs().maxCoeff() > 0.0) p = std::max(p, static_cast<int>(w.length()));
  return p;
}

CMatrix Symbol::coeff(const Word& w) const {
  const auto it = coeffs.find(w);
  return it == coeffs.end() ? CMatrix::Zero(dimL, dimD) : it->second;
}

void Symbol::set(const Word& w, const CMatrix& m) {
  if (m.rows() != dimL || m.cols() != dimD) fail(ErrorKind::DimensionMismatch, "coefficient has wrong shape");
  for (int l : w.letters)
    if (l < 1 || l > d) fail(ErrorKind::InvalidInput, "coefficient word letter outside 1..d");
  coeffs[w] = m;
}

CMatrix Symbol::stacked(int minLength, int maxLength) const {
  if (maxLength < minLength) return CMatrix(0, dimD);
  FockIndex idx(d, maxLength);
  const Eigen::Index first = idx.offset(minLength);
  const Eigen::Index count = idx.size() - first;
  CMatrix out = CMatrix::Zero(count * dimL, dimD);
  for (const auto& [w, m] : coeffs) {
    const int len = static_cast<int>(w.length());
    if (len < minLength || len > maxLength) continue;
    out.middleRows((idx.index_of(w) - first) * dimL, dimL) = m;
  }
  return out;
}

Symbol Symbol::truncated(int n) const {
  Symbol s(d, dimD, dimL);
  for (const auto& [w, m] : coeffs)
    if (static_cast<int>(w.length()) <= n) s.coeffs[w] = m;
  return s;
}

Symbol Symbol::pruned(double eps) const {
  Symbol s(d, dimD, dimL);
  for (const auto& [w, m] : coeffs)
    if (m.size() && m.cwiseAbs().maxCoeff() > eps) s.coeffs[w] = m;
  return s;
}

GradedOperator assemble(const Symbol& theta, int N) { return assemble(theta, N, N + theta.degree()); }

GradedOperator assemble(const Symbol& theta, int N, int nCod) {
  if (N < 0) fail(ErrorKind::DegreeOutOfRange, "assembly grade must be non-negative");
  const int p = theta.degree();
  const Grade dom{theta.d, N, theta.dimD, 0};
  const Grade cod{theta.d, nCod, theta.dimL, 0};
  FockIndex idx(theta.d, std::max(N, nCod));
  std::vector<Eigen::Triplet<cplx>> trip;
  const Eigen::Index nWords = fock_dim(theta.d, N);
  for (Eigen::Index b = 0; b < nWords; ++b) {
    const int lb = idx.length_of(b);
    for (const auto& [w, m] : theta.coeffs) {
      if (lb + static_cast<int>(w.length()) > nCod) continue;
      const Eigen::Index bg = idx.concat(b, idx.index_of(w));
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
          if (m(r, c) != cplx(0.0)) trip.emplace_back(cod.fock_index(bg, static_cast<int>(r)), dom.fock_index(b, static_cast<int>(c)), m(r, c));
    }
  }
  GradedOperator op{SpMatrix(cod.dim(), dom.dim()), dom, cod, std::min(N, nCod - p)};
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  return op;
}

double boundary_grid_sup(const Symbol& theta, int points) {
  if (theta.d != 1 || theta.dimD != 1 || theta.dimL != 1) fail(ErrorKind::InvalidInput, "grid sup needs a scalar d = 1 symbol");
  const int p = theta.degree();
  std::vector<cplx> c(static_cast<std::size_t>(p) + 1, 0.0);
  for (const auto& [w, m] : theta.coeffs)
    if (static_cast<int>(w.length()) <= p) c[w.length()] = m(0, 0);
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
    cplx acc = 0.0;
    for (int n = p; n >= 0; --n) acc = acc * z + c[n];
    best = std::max(best, std::abs(acc));
  }
  return best;
}

ContractivityCertificate certify_contractive(const Symbol& theta, int nCheck, double tol) {
  ContractivityCertificate cert;
  cert.checkedAtDegree = nCheck;
  if (theta.dimD == 0 || theta.dimL == 0) {
    cert.certified = true;
    return cert;
  }
  const GradedOperator m = assemble(theta, nCheck);
  const CMatrix gram = CMatrix(SpMatrix(m.matrix.adjoint()) * m.matrix);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  cert.sigmaMax = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  cert.certified = cert.sigmaMax <= 1.0 + tol;
  if (theta.d == 1 && theta.dimD == 1 && theta.dimL == 1) {
    cert.gridSup = boundary_grid_sup(theta, 4096);
    if (*cert.gridSup > 1.0 + 1e-6) cert.certified = false;
  }
  return cert;
}

const char* to_string(SzegoVerdict v) {
  switch (v) {
    case SzegoVerdict::Holds: return "holds";
    case SzegoVerdict::Fails: return "fails";
    case SzegoVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

CMatrix szego_distance_operator(const Symbol& theta, int N) {
  const Eigen::Index k = theta.dimD;
  if (k == 0) return CMatrix(0, 0);
  const GradedOperator m = assemble(theta, N);
  const CMatrix mm = CMatrix(SpMatrix(m.matrix.adjoint()) * m.matrix);
  const CMatrix g = CMatrix::Identity(mm.rows(), mm.cols()) - mm;
  const PsdFactor f = psd_factor(g);
  if (f.rank() == 0) return CMatrix::Zero(k, k);
  const CMatrix f0 = f.factor.leftCols(k);
  const CMatrix q = detail::range_basis(f.factor.rightCols(f.factor.cols() - k), 1e-10);
  const CMatrix r = f0 - q * (q.adjoint() * f0);
  return r.adjoint() * r;
}

namespace {

double lambda_max(const CMatrix& s) {
  if (s.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

int default_check_degree(const Symbol& theta) {
  const int p = theta.degree();
  int n = p + 2;
  while (n < 2 * p + 4 && theta.dimD * fock_dim(theta.d, n + 1) <= 600) ++n;
  return std::max(n, 2);
}

double smallest_singular(const CMatrix& m) {
  if (m.cols() == 0) return std::numeric_limits<double>::infinity();
  if (m.rows() < m.cols()) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

SzegoOperatorResult szego_operator(const Symbol& theta, int nCheck, int buffer, double tol) {
  SzegoOperatorResult r;
  const int earlier = std::max(1, nCheck - std::max(buffer, 1));
  r.distance = lambda_max(szego_distance_operator(theta, nCheck));
  r.distanceEarlier = lambda_max(szego_distance_operator(theta, earlier));
  if (r.distance <= tol) {
    r.verdict = SzegoVerdict::Holds;
  } else if (earlier < nCheck && r.distanceEarlier - r.distance <= 1e-6 * r.distance) {
    r.verdict = SzegoVerdict::Fails;
  } else {
    r.verdict = SzegoVerdict::Inconclusive;
  }
  return r;
}

std::string SymbolReport::to_string() const {
  std::ostringstream os;
  os << "injective=" << injective << " noConstantDirections=" << noConstantDirections
     << " purelyContractive=" << purelyContractive << " szego=" << liftlab::to_string(szegoOperator)
     << " certifiedAt=" << contractivityCertifiedAtDegree;
  return os.str();
}

SymbolReport predicates(const Symbol& theta, int nCheck, int buffer, double tol) {
  SymbolReport r;
  const int p = theta.degree();
  if (nCheck < 0) nCheck = default_check_degree(theta);
  if (buffer < 0) buffer = std::min(p + 1, nCheck - 1);

  const CMatrix all = theta.stacked(0, p);
  const CMatrix higher = theta.stacked(1, p);
  const double scale = std::max(1.0, op_norm(all));
  r.injectiveMargin = smallest_singular(all);
  r.constantDirMargin = p >= 1 ? smallest_singular(higher) : (theta.dimD == 0 ? r.injectiveMargin : 0.0);
  r.injective = theta.dimD == 0 || r.injectiveMargin > tol * scale;
  r.noConstantDirections = theta.dimD == 0 || r.constantDirMargin > tol * scale;
  const double s0 = op_norm(theta.coeff(Word{}));
  r.pureMargin = 1.0 - s0;
  r.purelyContractive = s0 < 1.0 - tol;

  const auto cert = certify_contractive(theta, nCheck);
  r.contractivityCertifiedAtDegree = cert.certified ? nCheck : -1;
  const SzegoOperatorResult sz = szego_operator(theta, nCheck, buffer);
  r.szegoOperator = sz.verdict;
  r.szegoDistance = sz.distance;
  return r;
}

Symbol compose(const Symbol& theta1, const Symbol& theta2) {
  if (theta2.dimL != theta1.dimD) fail(ErrorKind::DimensionMismatch, "compose needs dimL(theta2) = dimD(theta1)");
  if (theta1.d != theta2.d) fail(ErrorKind::DimensionMismatch, "compose needs equal d");
  Symbol out(theta1.d, theta2.dimD, theta1.dimL);
  for (const auto& [beta, m2] : theta2.coeffs)
    for (const auto& [gamma, m1] : theta1.coeffs) {
      const Word w = concat(beta, gamma);
      auto it = out.coeffs.find(w);
      if (it == out.coeffs.end()) out.coeffs[w] = m1 * m2;
      else it->second += m1 * m2;
    }
  return out;
}

Symbol right_multiply(const Symbol& theta, const CMatrix& u) {
  if (u.rows() != theta.dimD) fail(ErrorKind::DimensionMismatch, "right factor has wrong shape");
  Symbol out(theta.d, static_cast<int>(u.cols()), theta.dimL);
  for (const auto& [w, m] : theta.coeffs) out.coeffs[w] = m * u;
  return out;
}

Symbol left_multiply(const CMatrix& w, const Symbol& theta) {
  if (w.cols() != theta.dimL) fail(ErrorKind::DimensionMismatch, "left factor has wrong shape");
  Symbol out(theta.d, theta.dimD, static_cast<int>(w.rows()));
  for (const auto& [word, m] : theta.coeffs) out.coeffs[word] = w * m;
  return out;
}

namespace {

double stacked_residual(const CMatrix& target, const CMatrix& source, const CMatrix& v) {
  if (target.size() == 0) return 0.0;
  return (source * v - target).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix& v) {
  const Eigen::Index n = v.rows(), k = v.cols();
  return op_norm(v.adjoint() * v - CMatrix::Identity(k, k)) + op_norm(v * v.adjoint() - CMatrix::Identity(n, n));
}

}  // namespace

EquivalenceResult symbols_equivalent(const Symbol& theta, const Symbol& thetaPrime, double tol, int upToDegree) {
  if (theta.dimL != thetaPrime.dimL) fail(ErrorKind::DimensionMismatch, "equivalence needs a common L");
  if (theta.d != thetaPrime.d) fail(ErrorKind::DimensionMismatch, "equivalence needs equal d");
  EquivalenceResult r;
  if (theta.dimD != thetaPrime.dimD) {
    r.residual = std::numeric_limits<double>::infinity();
    r.unitarity = std::numeric_limits<double>::infinity();
    return r;
  }
  const int k = upToDegree >= 0 ? upToDegree : std::max(theta.degree(), thetaPrime.degree());
  if (theta.dimD == 0) {
    r.equivalent = true;
    r.v = CMatrix(0, 0);
    return r;
  }
  const CMatrix target = theta.stacked(0, k);
  const CMatrix source = thetaPrime.stacked(0, k);
  const CMatrix ls = source.completeOrthogonalDecomposition().solve(target);
  r.unitarity = unitarity_defect(ls);
  Eigen::JacobiSVD<CMatrix> svd(ls, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMatrix polar = svd.matrixU() * svd.matrixV().adjoint();
  const double resLs = stacked_residual(target, source, ls);
  const double resPolar = stacked_residual(target, source, polar);
  if (r.unitarity <= tol && resLs <= resPolar) {
    r.v = ls;
    r.residual = resLs;
  } else {
    r.v = polar;
    r.residual = resPolar;
  }
  r.equivalent = r.residual <= tol;
  return r;
}

namespace {

CMatrix polar_factor(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

CoincidenceResult symbols_coincide(const Symbol& theta, const Symbol& thetaPrime, double tol, int upToDegree) {
  if (theta.d != thetaPrime.d) fail(ErrorKind::DimensionMismatch, "coincidence needs equal d");
  CoincidenceResult r;
  if (theta.dimD != thetaPrime.dimD || theta.dimL != thetaPrime.dimL) {
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  const int k = upToDegree >= 0 ? upToDegree : std::max(theta.degree(), thetaPrime.degree());
  const Eigen::Index nl = theta.dimL, nd = theta.dimD;
  if (nl == 0 || nd == 0) {
    r.coincide = true;
    r.uL = CMatrix::Identity(nl, nl);
    r.uD = CMatrix::Identity(nd, nd);
    return r;
  }
  const CMatrix s = theta.stacked(0, k);
  const CMatrix sp = thetaPrime.stacked(0, k);
  const Eigen::Index blocks = s.rows() / nl;
  auto residual = [&](const CMatrix& uL, const CMatrix& uD) {
    double best = 0.0;
    for (Eigen::Index b = 0; b < blocks; ++b)
      best = std::max(best, (sp.middleRows(b * nl, nl) * uD - uL * s.middleRows(b * nl, nl)).cwiseAbs().maxCoeff());
    return best;
  };
  r.residual = std::numeric_limits<double>::infinity();
  // Alternating orthogonal Procrustes from a few deterministic starts.
  for (int start = 0; start < 4; ++start) {
    CMatrix uL = CMatrix::Identity(nl, nl);
    if (start > 0) {
      const CMatrix a = s.middleRows(((start - 1) % blocks) * nl, nl);
      const CMatrix b = sp.middleRows(((start - 1) % blocks) * nl, nl);
      uL = polar_factor(b * a.adjoint() + 1e-3 * CMatrix::Identity(nl, nl));
    }
    CMatrix uD = CMatrix::Identity(nd, nd);
    for (int it = 0; it < 200; ++it) {
      CMatrix accD = CMatrix::Zero(nd, nd), accL = CMatrix::Zero(nl, nl);
      for (Eigen::Index b = 0; b < blocks; ++b) accD += sp.middleRows(b * nl, nl).adjoint() * uL * s.middleRows(b * nl, nl);
      uD = polar_factor(accD);
      for (Eigen::Index b = 0; b < blocks; ++b) accL += sp.middleRows(b * nl, nl) * uD * s.middleRows(b * nl, nl).adjoint();
      uL = polar_factor(accL);
    }
    const double res = residual(uL, uD);
    if (res < r.residual) {
      r.residual = res;
      r.uL = uL;
      r.uD = uD;
    }
  }
  r.coincide = r.residual <= tol;
  return r;
}

double coefficient_residual(const Symbol& a, const Symbol& b, int upToDegree) {
  if (a.dimD != b.dimD || a.dimL != b.dimL || a.d != b.d) return std::numeric_limits<double>::infinity();
  const CMatrix diff = a.stacked(0, upToDegree) - b.stacked(0, upToDegree);
  return diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
}

Symbol normalize_phase(const Symbol& theta, double eps) {
  if (theta.dimD != 1 || theta.dimL != 1) return theta;
  for (const auto& [w, m] : theta.coeffs) {
    const double a = std::abs(m(0, 0));
    if (a > eps) {
      const cplx phase = std::conj(m(0, 0)) / a;
      Symbol out = theta;
      for (auto& [ww, mm] : out.coeffs) mm *= phase;
      return out;
    }
  }
  return theta;
}

}  // namespace liftlab
