#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "liftlab/lifting.hpp"
#include "liftlab/schur.hpp"
#include "liftlab/serialize.hpp"
#include "suites.hpp"

using namespace liftlab;
using io::json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotContractiveAtTruncation:
    case ErrorKind::NotPSD: return 2;
    case ErrorKind::StabilizationFailure: return 3;
    case ErrorKind::InconsistentWithTheorem:
    case ErrorKind::NotMinimal: return 4;
    default: return 1;
  }
}

json symbol_report_json(const SymbolReport& r) {
  return json{{"injective", r.injective},
              {"noConstantDirections", r.noConstantDirections},
              {"purelyContractive", r.purelyContractive},
              {"szegoOperator", liftlab::to_string(r.szegoOperator)},
              {"injectiveMargin", r.injectiveMargin},
              {"constantDirMargin", r.constantDirMargin},
              {"pureMargin", r.pureMargin},
              {"szegoDistance", r.szegoDistance}};
}

void emit(bool asJson, const json& report, const std::string& text) {
  if (asJson)
    std::cout << io::dump(report);
  else
    std::cout << text;
}

struct LiftArgs {
  std::string contraction, symbol, out;
  int trunc = 12, report = 8, buffer = 1;
};

int cmd_lift(const LiftArgs& a, bool asJson) {
  const RowTuple c = io::rowtuple_from_json(io::read_file(a.contraction));
  const io::SymbolFile sf = io::symbol_from_json(io::read_file(a.symbol));
  const LiftPolicy pol{a.trunc, a.report, a.buffer, 1e-7};
  const LiftResult r = map_E(c, sf.symbol, pol);
  const MinimalityResult mr = is_minimal(r.lifting);
  if (!a.out.empty()) io::write_file(a.out, io::to_json(r.lifting));

  json rep;
  rep["certificate"] = json{{"certified", r.certificate.certified},
                            {"sigmaMax", r.certificate.sigmaMax},
                            {"checkedAtDegree", r.certificate.checkedAtDegree}};
  if (r.certificate.gridSup) rep["certificate"]["gridSup"] = *r.certificate.gridSup;
  const bool zeroFunction = sf.symbol.dimD == 0;
  if (zeroFunction)
    rep["symbol"] = "zero function";
  else
    rep["symbol"] = symbol_report_json(predicates(sf.symbol));
  rep["minimal"] = mr.minimal;
  rep["finite"] = r.finite;
  rep["dimE"] = r.lifting.dim();
  rep["exactDim"] = r.lifting.exactDim;
  rep["stabilizationResidual"] = r.stabilizationResidual;

  std::ostringstream os;
  os << "certificate: sigma_max " << r.certificate.sigmaMax << " at degree " << r.certificate.checkedAtDegree << "\n";
  os << "symbol: " << (zeroFunction ? std::string("zero function, lifting is the minimal isometric dilation data")
                                    : predicates(sf.symbol).to_string())
     << "\n";
  os << "lifting: dim H_E " << r.lifting.dim() << (r.finite ? " (finite)" : " (truncated, exact " +
                                                     std::to_string(r.lifting.exactDim) + ")")
     << ", minimal " << (mr.minimal ? "yes" : "no") << ", stabilization " << r.stabilizationResidual << "\n";
  emit(asJson, rep, os.str());
  return 0;
}

int cmd_charfn(const std::string& lifting, int degree, const std::string& out, bool asJson) {
  const Lifting e = io::lifting_from_json(io::read_file(lifting));
  const CharFnResult cf = map_M(e, degree);
  io::SymbolFile sf;
  sf.symbol = cf.symbol.pruned(0.0);
  json ident{{"lcBasis", io::matrix_to_json(cf.lcBasis)},
             {"defectBasisE", io::matrix_to_json(cf.defectBasisE)},
             {"exactDegree", cf.exactDegree}};
  if (sf.symbol.dimD == 1 && sf.symbol.dimL == 1) {
    sf.symbol = normalize_phase(sf.symbol);
    ident["normalization"] = "first nonzero coefficient real positive";
  }
  sf.identificationRecord = ident;
  sf.provenance = json{{"charfnOf", lifting}, {"degree", degree}};
  const json j = io::to_json(sf);
  if (!out.empty()) io::write_file(out, j);
  std::ostringstream os;
  os << "characteristic function: dimD " << sf.symbol.dimD << ", dimL " << sf.symbol.dimL << ", exact through degree "
     << cf.exactDegree << "\n";
  if (sf.symbol.dimD == 1 && sf.symbol.dimL == 1) {
    os << "coefficients:";
    for (const auto& [w, m] : sf.symbol.coeffs) os << " " << std::setprecision(10) << m(0, 0).real() << (m(0, 0).imag() == 0.0 ? "" : "+i" + std::to_string(m(0, 0).imag()));
    os << "\n";
  }
  emit(asJson, j, os.str());
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int jobs, bool asJson) {
  const std::vector<suites::CaseResult> rs = suites::run(suite, seed, jobs);
  int failed = 0;
  json arr = json::array();
  std::ostringstream os;
  for (const auto& r : rs) {
    if (!r.passed) ++failed;
    arr.push_back(json{{"suite", r.suite}, {"case", r.name}, {"passed", r.passed},
                       {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)}, {"note", r.note}});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", r.residual);
    os << std::left << std::setw(5) << (r.passed ? "PASS" : "FAIL") << std::setw(10) << r.suite << std::setw(34) << r.name
       << std::setw(12) << buf << r.note << "\n";
  }
  os << rs.size() - failed << "/" << rs.size() << " passed\n";
  emit(asJson, json{{"seed", seed}, {"suite", suite}, {"cases", arr}, {"failed", failed}}, os.str());
  return failed ? 4 : 0;
}

int cmd_szego(const std::string& file, int points, bool asJson) {
  const io::SymbolFile sf = io::symbol_from_json(io::read_file(file));
  const ScalarSchur s = ScalarSchur::from_symbol(sf.symbol);
  const SpectralSzego r = szego_spectral(s, points);
  std::ostringstream os;
  if (r.diverges)
    os << "diverges to -inf (" << r.flaggedPoints << " flagged points) -> spectral Szego HOLDS\n";
  else
    os << "finite: " << std::fixed << std::setprecision(4) << r.integral << " -> spectral Szego FAILS\n";
  emit(asJson,
       json{{"diverges", r.diverges}, {"integral", r.integral}, {"flaggedPoints", r.flaggedPoints}, {"points", r.points}},
       os.str());
  return 0;
}

struct FactorArgs {
  std::string contraction, theta1, theta2;
  int trunc = 12, report = 8, buffer = 1;
};

int cmd_factor(const FactorArgs& a, bool asJson) {
  const RowTuple c = io::rowtuple_from_json(io::read_file(a.contraction));
  const Symbol t1 = io::symbol_from_json(io::read_file(a.theta1)).symbol;
  const Symbol t2 = io::symbol_from_json(io::read_file(a.theta2)).symbol;
  const FactorReport r = factor_check(c, t1, t2, LiftPolicy{a.trunc, a.report, a.buffer, 1e-7});
  std::ostringstream os;
  os << "factorization residual " << r.residual << " through degree " << r.comparedDegree << ": "
     << (r.equivalent ? "equivalent" : "NOT equivalent") << ", iterated lifting minimal " << (r.minimal ? "yes" : "no")
     << "\n";
  emit(asJson,
       json{{"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
            {"equivalent", r.equivalent},
            {"minimal", r.minimal},
            {"comparedDegree", r.comparedDegree},
            {"dimIntermediate", r.dimIntermediate},
            {"dimFinal", r.dimFinal}},
       os.str());
  return r.equivalent && r.minimal ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liftlab: liftings of row contractions and their characteristic functions"};
  app.require_subcommand(1);
  bool asJson = false;
  app.add_flag("--json", asJson, "Machine-readable report on stdout");

  LiftArgs la;
  auto* lift = app.add_subcommand("lift", "Build the lifting of a contraction from a symbol");
  lift->add_option("--contraction", la.contraction, "Row tuple file")->required();
  lift->add_option("--symbol", la.symbol, "Symbol file")->required();
  lift->add_option("--trunc", la.trunc, "Build grade N");
  lift->add_option("--report-degree", la.report, "Report degree R");
  lift->add_option("--buffer", la.buffer, "Buffer B");
  lift->add_option("--out", la.out, "Lifting output file");

  std::string liftingFile, charOut;
  int degree = 8;
  auto* charfn = app.add_subcommand("charfn", "Characteristic function of a lifting");
  charfn->add_option("--lifting", liftingFile, "Lifting file")->required();
  charfn->add_option("--degree", degree, "Degree K");
  charfn->add_option("--out", charOut, "Symbol output file");

  std::string suite = "all";
  std::uint64_t seed = 0;
  int jobs = 1;
  auto* verify = app.add_subcommand("verify", "Run seeded property suites");
  verify->add_option("--suite", suite, "model|lifting|schur|appendix|all");
  verify->add_option("--seed", seed, "Seed")->required();
  verify->add_option("--jobs", jobs, "Parallel cases");

  std::string schurFile;
  int points = 4096;
  auto* szego = app.add_subcommand("szego", "Spectral Szego quadrature of a scalar Schur function");
  szego->add_option("--schur", schurFile, "Symbol file (d = 1, 1x1)")->required();
  szego->add_option("--points", points, "Quadrature points");

  FactorArgs fa;
  auto* factor = app.add_subcommand("factor", "Check the factorization through an iterated lifting");
  factor->add_option("--contraction", fa.contraction, "Row tuple file")->required();
  factor->add_option("--theta1", fa.theta1, "First symbol")->required();
  factor->add_option("--theta2", fa.theta2, "Second symbol")->required();
  factor->add_option("--trunc", fa.trunc, "Build grade N");
  factor->add_option("--report-degree", fa.report, "Report degree R");
  factor->add_option("--buffer", fa.buffer, "Buffer B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*lift) return cmd_lift(la, asJson);
    if (*charfn) return cmd_charfn(liftingFile, degree, charOut, asJson);
    if (*verify) return cmd_verify(suite, seed, jobs, asJson);
    if (*szego) return cmd_szego(schurFile, points, asJson);
    if (*factor) return cmd_factor(fa, asJson);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
