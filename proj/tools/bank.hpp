#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "liftlab/lifting.hpp"
#include "liftlab/schur.hpp"

namespace liftlab::bank {

using Rng = std::mt19937_64;

CMatrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);
CMatrix random_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// sum_n || column stack of theta_alpha, |alpha| = n ||, an upper bound for ||M_theta||.
double norm_bound(const Symbol& theta);

/// Gaussian polynomial symbol rescaled so that norm_bound = target.
Symbol random_symbol(Rng& rng, int d, int dimD, int dimL, int degree, double target = 0.9);

/// Finite lifting with strictly lower triangular A, scaled to row norm `scale`; regenerated until minimal.
Lifting random_nilpotent_lifting(Rng& rng, int d, int dimC, int dimA, double scale = 0.9);

/// d = 2 lifting of a unit row C on C^1 with B orthogonal to C and A = 0; defect(C) = 1, defect(E) = 2.
Lifting random_coisometric_lifting(Rng& rng);

struct NamedSymbol {
  std::string name;
  Symbol symbol;
};

/// Mobius, constant 1/2, z/2, a non-injective constant and a seeded d = 2 degree-2 symbol.
std::vector<NamedSymbol> trichotomy_bank(std::uint64_t seed);

struct NamedSchur {
  std::string name;
  ScalarSchur schur;
};

std::vector<NamedSchur> schur_bank();

Symbol z_over_two();

}  // namespace liftlab::bank
