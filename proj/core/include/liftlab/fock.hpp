#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "liftlab/common.hpp"

namespace liftlab {

/// A word over the alphabet {1, ..., d}. The empty word is the vacuum.
struct Word {
  std::vector<int> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  std::string to_string() const;

  /// Graded lexicographic order: shorter words first, then lexicographic.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;
};

Word concat(const Word& a, const Word& b);

/// Word bookkeeping for the full Fock space over C^d truncated at length N.
class FockIndex {
 public:
  FockIndex(int d, int maxLength);

  int d() const noexcept { return d_; }
  int max_length() const noexcept { return n_; }
  /// Number of words of length <= max_length.
  Eigen::Index size() const noexcept { return offsets_.back(); }
  /// Index of the first word of length `len` (len may be max_length + 1 for the end sentinel).
  Eigen::Index offset(int len) const;
  Eigen::Index count(int len) const;  // d^len

  Eigen::Index index_of(const Word& w) const;
  Word word_at(Eigen::Index idx) const;
  int length_of(Eigen::Index idx) const;

  /// Index of the word (j, beta) given the index of beta; requires |beta| < max_length.
  Eigen::Index prepend(int j, Eigen::Index beta) const;
  /// Index of beta gamma; requires |beta| + |gamma| <= max_length.
  Eigen::Index concat(Eigen::Index beta, Eigen::Index gamma) const;

 private:
  int d_;
  int n_;
  std::vector<Eigen::Index> offsets_;
  std::vector<Eigen::Index> powers_;
};

std::vector<Word> enumerate_words(int d, int maxLength);
Eigen::Index fock_dim(int d, int maxLength);

/// Coordinates of (prefix space) + (Gamma_N tensor C^coef).
/// Index layout: prefix block first, then word-major, coefficient-minor.
struct Grade {
  int d = 1;
  int N = 0;
  int coef = 1;
  Eigen::Index prefix = 0;

  Eigen::Index dim() const { return prefix + fock_dim(d, N) * coef; }
  Eigen::Index fock_index(Eigen::Index word, int c) const { return prefix + word * coef + c; }
  Grade with_N(int n) const { return Grade{d, n, coef, prefix}; }
  friend bool operator==(const Grade&, const Grade&) = default;
};

/// A matrix between two graded spaces together with the degree up to which it agrees
/// with the untruncated operator.
struct GradedOperator {
  SpMatrix matrix;
  Grade domain;
  Grade codomain;
  int exactUpToDegree = 0;

  CMatrix dense() const { return CMatrix(matrix); }
};

/// L_j tensor I : Gamma_N (x) C^k -> Gamma_{N+1} (x) C^k. Exact.
GradedOperator creation(int j, const Grade& space);
/// L_j tensor I kept inside Gamma_N; the top degree is dropped (exact up to N-1).
GradedOperator creation_within(int j, const Grade& space);
GradedOperator identity(const Grade& space);

/// Restricts the domain and projects the codomain onto words of length <= nReport.
GradedOperator compress_to_degree(const GradedOperator& op, int nReport);

/// Zero-pads or truncates a coefficient vector between grades sharing d, coef and prefix.
CVector regrade(const CVector& v, const Grade& from, const Grade& to);
/// Euclidean norm of the components supported on words of length >= minLength.
double mass_from_degree(const CVector& v, const Grade& g, int minLength);

}  // namespace liftlab
