#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace liftlab::suites {

struct CaseResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string note;
};

/// Names accepted by run(): model, lifting, schur, appendix, all.
bool known_suite(const std::string& name);

/// Runs the seeded property suites; cases are evaluated on up to `jobs` threads, results keep case order.
std::vector<CaseResult> run(const std::string& suite, std::uint64_t seed, int jobs = 1);

/// One random Lemma-inv instance (isometry of size 10..16 with an invariant pair); returns the max residual.
double lemma_instance_residual(std::uint64_t seed, int index, std::string* note = nullptr);

}  // namespace liftlab::suites
