#include "liftlab/schur.hpp"

#include <cmath>
#include <numbers>

namespace liftlab {

Symbol ScalarSchur::symbol() const {
  Symbol s(1, 1, 1);
  for (std::size_t n = 0; n < taylor.size(); ++n) {
    if (taylor[n] == cplx(0.0) && n > 0) continue;
    Word w;
    w.letters.assign(n, 1);
    s.set(w, CMatrix::Constant(1, 1, taylor[n]));
  }
  return s;
}

ScalarSchur ScalarSchur::from_symbol(const Symbol& s) {
  if (s.d != 1 || s.dimD != 1 || s.dimL != 1) fail(ErrorKind::InvalidInput, "scalar Schur functions need d = 1 and 1x1 coefficients");
  ScalarSchur out;
  out.taylor.assign(static_cast<std::size_t>(s.degree()) + 1, 0.0);
  for (const auto& [w, m] : s.coeffs)
    if (w.length() < out.taylor.size()) out.taylor[w.length()] = m(0, 0);
  return out;
}

cplx ScalarSchur::eval(cplx z) const {
  cplx acc = 0.0;
  for (auto it = taylor.rbegin(); it != taylor.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ScalarSchur mobius(cplx alpha, int degree) {
  if (!(std::abs(alpha) < 1.0 - 1e-12)) fail(ErrorKind::NotInDisk, "Mobius parameter must lie in the open disk");
  if (degree < 1) fail(ErrorKind::DegreeOutOfRange, "Mobius truncation degree must be >= 1");
  ScalarSchur s;
  s.taylor.resize(static_cast<std::size_t>(degree) + 1);
  s.taylor[0] = -alpha;
  const double w = 1.0 - std::norm(alpha);
  cplx pw = 1.0;
  for (int n = 1; n <= degree; ++n) {
    s.taylor[static_cast<std::size_t>(n)] = w * pw;
    pw *= std::conj(alpha);
  }
  s.provenance = "truncationOf:mobius@" + std::to_string(degree);
  return s;
}

ScalarSchur constant_schur(cplx c) { return ScalarSchur{{c}, "polynomial"}; }

ScalarSchur monomial(cplx c, int n) {
  if (n < 0) fail(ErrorKind::DegreeOutOfRange, "monomial degree must be non-negative");
  ScalarSchur s;
  s.taylor.assign(static_cast<std::size_t>(n) + 1, 0.0);
  s.taylor.back() = c;
  return s;
}

SpectralSzego szego_spectral(const ScalarSchur& theta, int quadraturePoints) {
  if (quadraturePoints < 256 || (quadraturePoints & (quadraturePoints - 1)) != 0)
    fail(ErrorKind::InvalidInput, "quadrature points must be a power of two >= 256");
  SpectralSzego r;
  r.points = quadraturePoints;
  const double h = 2.0 * std::numbers::pi / quadraturePoints;
  double sum = 0.0;
  for (int k = 0; k < quadraturePoints; ++k) {
    const double g = 1.0 - std::norm(theta.eval(std::polar(1.0, k * h)));
    if (g <= 1e-13) {
      ++r.flaggedPoints;
      continue;
    }
    sum += std::log(g);
  }
  r.integral = h * sum;
  r.diverges = r.flaggedPoints >= 0.01 * quadraturePoints || r.integral < -50.0;
  return r;
}

CncSchurReport classify_cnc_schur(const ScalarSchur& theta, double tol) {
  CncSchurReport r;
  const Symbol s = theta.symbol();
  r.pureAtZero = !theta.taylor.empty() ? std::abs(theta.taylor[0]) < 1.0 - tol : true;
  r.spectral = szego_spectral(theta, 4096);
  r.cnc = r.pureAtZero && r.spectral.diverges;
  r.operatorPredicates = predicates(s);
  if (r.operatorPredicates.purelyContractive != r.pureAtZero) r.consistent = false;
  if (r.operatorPredicates.szegoOperator == SzegoVerdict::Holds && !r.spectral.diverges) r.consistent = false;
  if (r.operatorPredicates.szegoOperator == SzegoVerdict::Fails && r.spectral.diverges) r.consistent = false;
  return r;
}

}  // namespace liftlab
