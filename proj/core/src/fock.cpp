#include "liftlab/fock.hpp"

#include <algorithm>

namespace liftlab {

std::string Word::to_string() const {
  if (letters.empty()) return "()";
  std::string s;
  for (int l : letters) s += std::to_string(l);
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters.begin(), a.letters.end(),
                                                b.letters.begin(), b.letters.end());
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

FockIndex::FockIndex(int d, int maxLength) : d_(d), n_(maxLength) {
  if (d < 1) fail(ErrorKind::InvalidInput, "d must be positive");
  if (maxLength < 0) fail(ErrorKind::InvalidInput, "truncation length must be non-negative");
  powers_.resize(static_cast<std::size_t>(maxLength) + 2);
  offsets_.resize(static_cast<std::size_t>(maxLength) + 2);
  powers_[0] = 1;
  offsets_[0] = 0;
  for (int k = 1; k <= maxLength + 1; ++k) {
    powers_[k] = powers_[k - 1] * d;
    offsets_[k] = offsets_[k - 1] + powers_[k - 1];
  }
}

Eigen::Index FockIndex::offset(int len) const {
  if (len < 0 || len > n_ + 1) fail(ErrorKind::DegreeOutOfRange, "word length outside truncation");
  return offsets_[len];
}

Eigen::Index FockIndex::count(int len) const {
  if (len < 0 || len > n_ + 1) fail(ErrorKind::DegreeOutOfRange, "word length outside truncation");
  return powers_[len];
}

Eigen::Index FockIndex::index_of(const Word& w) const {
  const int len = static_cast<int>(w.length());
  if (len > n_) fail(ErrorKind::DegreeOutOfRange, "word longer than truncation");
  Eigen::Index rank = 0;
  for (int l : w.letters) {
    if (l < 1 || l > d_) fail(ErrorKind::InvalidInput, "letter outside 1..d");
    rank = rank * d_ + (l - 1);
  }
  return offsets_[len] + rank;
}

int FockIndex::length_of(Eigen::Index idx) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Word FockIndex::word_at(Eigen::Index idx) const {
  if (idx < 0 || idx >= size()) fail(ErrorKind::DegreeOutOfRange, "index outside truncation");
  const int len = length_of(idx);
  Eigen::Index rank = idx - offsets_[len];
  Word w;
  w.letters.resize(static_cast<std::size_t>(len));
  for (int k = len - 1; k >= 0; --k) {
    w.letters[k] = static_cast<int>(rank % d_) + 1;
    rank /= d_;
  }
  return w;
}

Eigen::Index FockIndex::prepend(int j, Eigen::Index beta) const {
  const int len = length_of(beta);
  return offsets_[len + 1] + (j - 1) * powers_[len] + (beta - offsets_[len]);
}

Eigen::Index FockIndex::concat(Eigen::Index beta, Eigen::Index gamma) const {
  const int lb = length_of(beta);
  const int lg = length_of(gamma);
  return offsets_[lb + lg] + (beta - offsets_[lb]) * powers_[lg] + (gamma - offsets_[lg]);
}

std::vector<Word> enumerate_words(int d, int maxLength) {
  FockIndex idx(d, maxLength);
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(idx.size()));
  for (Eigen::Index i = 0; i < idx.size(); ++i) out.push_back(idx.word_at(i));
  return out;
}

Eigen::Index fock_dim(int d, int maxLength) {
  if (maxLength < 0) return 0;
  if (d == 1) return maxLength + 1;
  Eigen::Index p = 1, total = 0;
  for (int k = 0; k <= maxLength; ++k) {
    total += p;
    p *= d;
  }
  return total;
}

namespace {

GradedOperator shift(int j, const Grade& from, const Grade& to, int exact) {
  if (j < 1 || j > from.d) fail(ErrorKind::InvalidInput, "creation letter outside 1..d");
  FockIndex words(from.d, std::max(from.N, to.N) + 1);
  std::vector<Eigen::Triplet<cplx>> trip;
  const Eigen::Index nWords = fock_dim(from.d, from.N);
  for (Eigen::Index b = 0; b < nWords; ++b) {
    if (words.length_of(b) + 1 > to.N) continue;
    const Eigen::Index jb = words.prepend(j, b);
    for (int c = 0; c < from.coef; ++c) trip.emplace_back(to.fock_index(jb, c), from.fock_index(b, c), 1.0);
  }
  GradedOperator op{SpMatrix(to.dim(), from.dim()), from, to, exact};
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  return op;
}

}  // namespace

GradedOperator creation(int j, const Grade& space) {
  Grade plain = space;
  plain.prefix = 0;
  return shift(j, plain, plain.with_N(space.N + 1), space.N);
}

GradedOperator creation_within(int j, const Grade& space) {
  Grade plain = space;
  plain.prefix = 0;
  return shift(j, plain, plain, space.N - 1);
}

GradedOperator identity(const Grade& space) {
  SpMatrix id(space.dim(), space.dim());
  id.setIdentity();
  return GradedOperator{id, space, space, space.N};
}

namespace {

SpMatrix grade_projection(const Grade& from, int nReport) {
  const Grade to = from.with_N(nReport);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Eigen::Index i = 0; i < to.dim(); ++i) trip.emplace_back(i, i, 1.0);
  SpMatrix p(to.dim(), from.dim());
  p.setFromTriplets(trip.begin(), trip.end());
  return p;
}

}  // namespace

GradedOperator compress_to_degree(const GradedOperator& op, int nReport) {
  if (nReport < 0 || nReport > std::min(op.domain.N, op.codomain.N))
    fail(ErrorKind::DegreeOutOfRange, "report degree " + std::to_string(nReport) + " exceeds available grades");
  const SpMatrix pd = grade_projection(op.domain, nReport);
  const SpMatrix pc = grade_projection(op.codomain, nReport);
  GradedOperator out;
  out.matrix = pc * op.matrix * SpMatrix(pd.adjoint());
  out.domain = op.domain.with_N(nReport);
  out.codomain = op.codomain.with_N(nReport);
  // Dropping codomain rows loses exactness for inputs that map past nReport.
  const int shiftLoss = std::max(0, op.codomain.N - op.exactUpToDegree);
  out.exactUpToDegree = std::min(op.exactUpToDegree, nReport - (op.codomain.N > nReport ? shiftLoss : 0));
  out.exactUpToDegree = std::min(out.exactUpToDegree, nReport);
  return out;
}

CVector regrade(const CVector& v, const Grade& from, const Grade& to) {
  if (from.d != to.d || from.coef != to.coef || from.prefix != to.prefix)
    fail(ErrorKind::AmbientMismatch, "regrade between incompatible grades");
  if (v.size() != from.dim()) fail(ErrorKind::AmbientMismatch, "vector does not match grade");
  CVector out = CVector::Zero(to.dim());
  const Eigen::Index n = std::min(from.dim(), to.dim());
  out.head(n) = v.head(n);
  return out;
}

double mass_from_degree(const CVector& v, const Grade& g, int minLength) {
  if (minLength > g.N) return 0.0;
  const Eigen::Index start = g.prefix + fock_dim(g.d, minLength - 1) * g.coef;
  return v.segment(start, g.dim() - start).norm();
}

}  // namespace liftlab
