#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>

#include "bank.hpp"

namespace liftlab::suites {

namespace {

using Case = std::function<CaseResult()>;

CaseResult guarded(const std::string& suite, const std::string& name, const std::function<CaseResult()>& f) {
  try {
    CaseResult r = f();
    r.suite = suite;
    r.name = name;
    return r;
  } catch (const Error& e) {
    return CaseResult{suite, name, false, std::numeric_limits<double>::infinity(),
                      std::string(liftlab::to_string(e.kind())) + ": " + e.what()};
  }
}

ModelPolicy model_policy_for(const Symbol& s) {
  if (s.d == 1) return ModelPolicy{10, 6, 1, 1e-7};
  return ModelPolicy{6, 4, 1, 1e-7};
}

void model_cases(std::uint64_t seed, std::vector<Case>& out) {
  for (const auto& ns : bank::trichotomy_bank(seed)) {
    out.push_back([ns] {
      return guarded("model", "classify " + ns.name, [&] {
        const FunctionalModel m = build_model(ns.symbol, model_policy_for(ns.symbol));
        const ClassifyReport c = classify(m, false);
        return CaseResult{"", "", c.consistent(), m.stabilizationResidual, c.to_string()};
      });
    });
    out.push_back([ns] {
      return guarded("model", "props " + ns.name, [&] {
        const FunctionalModel m = build_model(ns.symbol, model_policy_for(ns.symbol));
        const ModelPropsReport p = verify_model_props(m);
        const double res = p.lemmaEvaluated ? p.lemma.max_residual() : std::numeric_limits<double>::infinity();
        std::ostringstream note;
        note << "cap dim " << p.intersectionDim << ", cnc " << (p.cncCertifiedAt ? std::to_string(*p.cncCertifiedAt) : "abstain");
        return CaseResult{"", "", p.lemmaEvaluated && res <= 1e-9 && p.intersectionDim == 0, res, note.str()};
      });
    });
  }
}

void lifting_cases(std::uint64_t seed, std::vector<Case>& out) {
  const RowTuple half({CMatrix::Constant(1, 1, 0.5)}, "H_C");
  out.push_back([half] {
    return guarded("lifting", "mobius lifting golden", [&] {
      const LiftResult r = map_E(half, mobius(0.5, 40).symbol(), LiftPolicy{});
      CMatrix want(2, 2);
      want << 0.5, 0.0, 0.75, 0.5;
      const double res = r.lifting.dim() == 2 ? (r.lifting.E()[0] - want).cwiseAbs().maxCoeff() : 1.0;
      return CaseResult{"", "", res <= 1e-9, res, ""};
    });
  });
  out.push_back([half] {
    return guarded("lifting", "z/2 roundtrip", [&] {
      const RoundtripMEReport r = roundtrip_ME(half, bank::z_over_two(), LiftPolicy{});
      return CaseResult{"", "", r.passed(1e-7), r.residual, "degree " + std::to_string(r.comparedDegree)};
    });
  });
  for (int i = 0; i < 4; ++i) {
    out.push_back([seed, i] {
      return guarded("lifting", "roundtrip ME #" + std::to_string(i), [&] {
        bank::Rng rng(seed * 1009 + static_cast<std::uint64_t>(i));
        const int d = 1 + i % 2;
        const int dimL = 1 + i % 2;
        const RowTuple c = contraction_with_defect(d, dimL);
        const Symbol th = bank::random_symbol(rng, d, 1, dimL, 1 + i % 2);
        const LiftPolicy pol = d == 1 ? LiftPolicy{12, 8, 1, 1e-7} : LiftPolicy{6, 5, 1, 1e-7};
        const RoundtripMEReport r = roundtrip_ME(c, th, pol);
        return CaseResult{"", "", r.passed(1e-7), r.residual, "degree " + std::to_string(r.comparedDegree)};
      });
    });
  }
  for (int i = 0; i < 4; ++i) {
    out.push_back([seed, i] {
      return guarded("lifting", "roundtrip EM #" + std::to_string(i), [&] {
        bank::Rng rng(seed * 2003 + static_cast<std::uint64_t>(i));
        const Lifting e = bank::random_nilpotent_lifting(rng, 1, 1 + i % 2, 1 + i % 3);
        const RoundtripEMReport r = roundtrip_EM(e, LiftPolicy{8, 7, 1, 1e-7}, 12);
        return CaseResult{"", "", r.equivalent(), r.residual, "dim " + std::to_string(r.dimE)};
      });
    });
  }
  out.push_back([half] {
    return guarded("lifting", "factor z * 1/2", [&] {
      Symbol z(1, 1, 1);
      z.set(Word{{1}}, CMatrix::Constant(1, 1, 1.0));
      const FactorReport r = factor_check(half, z, Symbol::constant(1, CMatrix::Constant(1, 1, 0.5)), LiftPolicy{});
      return CaseResult{"", "", r.equivalent && r.minimal && r.residual <= 1e-6, r.residual,
                        "degree " + std::to_string(r.comparedDegree)};
    });
  });
  out.push_back([half] {
    return guarded("lifting", "bridge mobius", [&] {
      const LiftResult r = map_E(half, mobius(0.5, 40).symbol(), LiftPolicy{});
      const BridgeReport b = theorem45_bridge(r.lifting, LiftPolicy{});
      const double res = b.charfnResidual.value_or(std::numeric_limits<double>::infinity());
      return CaseResult{"", "", b.holds() && b.predicted && res <= 1e-8, res, b.to_string()};
    });
  });
}

void schur_cases(std::vector<Case>& out) {
  out.push_back([] {
    return guarded("schur", "spectral z/2", [&] {
      const SpectralSzego s = szego_spectral(monomial(0.5, 1), 4096);
      const double res = std::abs(s.integral - 2.0 * std::acos(-1.0) * std::log(0.75));
      return CaseResult{"", "", !s.diverges && res <= 1e-5, res, std::to_string(s.integral)};
    });
  });
  for (const auto& ns : bank::schur_bank()) {
    out.push_back([ns] {
      return guarded("schur", "classify " + ns.name, [&] {
        const CncSchurReport r = classify_cnc_schur(ns.schur);
        std::ostringstream note;
        note << "cnc=" << r.cnc << " szego=" << liftlab::to_string(r.operatorPredicates.szegoOperator);
        return CaseResult{"", "", r.consistent, 0.0, note.str()};
      });
    });
  }
}

void appendix_cases(std::uint64_t seed, std::vector<Case>& out) {
  for (int i = 0; i < 100; ++i) {
    out.push_back([seed, i] {
      return guarded("appendix", "lemma-inv #" + std::to_string(i), [&] {
        std::string note;
        const double res = lemma_instance_residual(seed, i, &note);
        return CaseResult{"", "", res <= 1e-9, res, note};
      });
    });
  }
}

}  // namespace

bool known_suite(const std::string& name) {
  return name == "model" || name == "lifting" || name == "schur" || name == "appendix" || name == "all";
}

double lemma_instance_residual(std::uint64_t seed, int index, std::string* note) {
  bank::Rng rng(seed * 7919 + static_cast<std::uint64_t>(index));
  std::uniform_int_distribution<int> dimDist(10, 16);
  const int n2 = dimDist(rng);
  std::uniform_int_distribution<int> n1Dist(std::max(1, n2 / 2), n2);
  const int n1 = n1Dist(rng);
  const CMatrix t = bank::random_isometry(rng, n2, n1);
  std::uniform_int_distribution<int> k1Dist(0, n1);
  const int k1 = k1Dist(rng);
  const CMatrix k1b = k1 ? bank::random_isometry(rng, n1, k1) : CMatrix(n1, 0);
  std::uniform_int_distribution<int> extraDist(0, n2 - k1);
  const int extra = extraDist(rng);
  CMatrix gen(n2, k1 + extra);
  gen.leftCols(k1) = t * k1b;
  if (extra) gen.rightCols(extra) = bank::gaussian(rng, n2, extra);
  const Subspace s1(n1, k1b);
  const Subspace s2 = Subspace::span_of(gen);
  const LemmaInvReport r = verify_lemma_inv(t, s1, s2);
  if (note) *note = r.to_string() + " [n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) + " k1=" + std::to_string(k1) + " extra=" + std::to_string(extra) + "]";
  return r.max_residual();
}

std::vector<CaseResult> run(const std::string& suite, std::uint64_t seed, int jobs) {
  if (!known_suite(suite)) fail(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");
  std::vector<Case> cases;
  const bool all = suite == "all";
  if (all || suite == "model") model_cases(seed, cases);
  if (all || suite == "lifting") lifting_cases(seed, cases);
  if (all || suite == "schur") schur_cases(cases);
  if (all || suite == "appendix") appendix_cases(seed, cases);

  std::vector<CaseResult> results(cases.size());
  jobs = std::max(1, jobs);
  for (std::size_t start = 0; start < cases.size(); start += static_cast<std::size_t>(jobs)) {
    std::vector<std::future<CaseResult>> batch;
    const std::size_t end = std::min(cases.size(), start + static_cast<std::size_t>(jobs));
    for (std::size_t i = start; i < end; ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, cases[i]));
    for (std::size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
  }
  return results;
}

}  // namespace liftlab::suites
