#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "paper_suite.hpp"
#include "tropmin/inequalities.hpp"
#include "tropmin/realization.hpp"
#include "tropmin/subdivision.hpp"

// Exit codes: 0 success, 1 property-violation verdict, 2 input error,
// 3 internal assertion failure.
namespace {

using namespace tropmin;
using nlohmann::ordered_json;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SetFunction readSetFunction(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(readFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("JSON parse error in " + path + ": " + e.what());
  }
  return setFunctionFromJson(j);
}

void emit(const ordered_json& j, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + outPath);
    out << j.dump(2) << "\n";
  }
}

ordered_json submodularWitnessJson(const SubmodularViolation& v, int n) {
  return {{"S", subsetKey(v.S, n)}, {"i", v.i}, {"j", v.j}};
}

int cmdCheck(const std::string& fnPath, const std::string& outPath) {
  SetFunction f = readSetFunction(fnPath);
  requireFinite(f, "check");
  ordered_json j;
  j["n"] = f.n;

  auto submodViol = firstSubmodularViolation(f);
  j["submodular"] = !submodViol.has_value();
  if (submodViol) j["submodularWitness"] = submodularWitnessJson(*submodViol, f.n);
  auto strictViol = firstSubmodularViolation(f, true);
  j["strictlySubmodular"] = !strictViol.has_value();

  auto exchViol = firstExchangeViolation(f);
  bool concave = !exchViol.has_value();
  j["mNaturalConcave"] = concave;
  if (exchViol)
    j["exchangeWitness"] = {{"S", subsetKey(exchViol->S, f.n)},
                            {"T", subsetKey(exchViol->T, f.n)},
                            {"i", exchViol->i}};

  auto flagViol = firstFlagDressianViolation(f);
  j["flagDressian"] = !flagViol.has_value();
  if (flagViol)
    j["flagWitness"] = {{"S", subsetKey(flagViol->S, f.n)},
                        {"T", subsetKey(flagViol->T, f.n)}};

  // all available characterizations of M-natural concavity must agree
  ordered_json chars;
  chars["exchange"] = concave;
  bool agree = true;
  if (f.n <= 5) {
    bool lift = isDressian(multisymmetricLift(f));
    chars["liftDressian"] = lift;
    agree = agree && lift == concave;
  } else {
    chars["liftDressian"] = nullptr;
  }
  {
    bool layers = !submodViol.has_value();
    if (layers)
      for (int k = 0; k <= f.n - 1 && layers; ++k)
        layers = isDressian(homogenizeLayer(f, k));
    chars["homogenizedLayers"] = layers;
    agree = agree && layers == concave;
  }
  {
    bool flagSub = !submodViol.has_value() && !flagViol.has_value();
    chars["submodularFlag"] = flagSub;
    agree = agree && flagSub == concave;
  }
  if (f.n <= 6) {
    bool edges = subdivisionEdges(upperHullSubdivision(f)).allUnitOrDifference;
    chars["subdivisionEdges"] = edges;
    agree = agree && edges == concave;
  } else {
    chars["subdivisionEdges"] = nullptr;
  }
  j["characterizations"] = chars;
  if (!agree)
    throw InternalError("characterizations of M-natural concavity disagree");
  j["characterizationsAgree"] = true;

  emit(j, outPath);
  std::cerr << (concave ? "M-natural concave" : "not M-natural concave")
            << (j["submodular"].get<bool>() ? ", submodular" : ", not submodular")
            << "\n";
  return concave ? 0 : 1;
}

int cmdMinors(const std::string& matPath, bool useGram,
              const std::string& outPath) {
  SeriesMatrix m = parseMatrixFile(readFile(matPath));
  SeriesMatrix a = useGram ? gram(m) : m;
  bool pd = isPositiveDefinite(a);
  SetFunction f = tropPrincipalMinors(a);
  ordered_json j;
  j["pd"] = pd;
  j["minors"] = setFunctionToJson(f);
  emit(j, outPath);
  std::cerr << (pd ? "positive definite" : "not positive definite") << "\n";
  return pd ? 0 : 1;
}

int cmdSubdivide(const std::string& fnPath, const std::string& perturb,
                 const std::string& outPath) {
  SetFunction f = readSetFunction(fnPath);
  CubeSubdivision sub = upperHullSubdivision(f);
  EdgeReport edges = subdivisionEdges(sub);
  ordered_json j = subdivisionToJson(sub);
  j["edges"] = edgeReportToJson(edges);
  j["layered"] = isLayered(sub);
  if (!perturb.empty()) {
    std::optional<Rational> eps;
    if (perturb != "auto") eps = parseRational(perturb);
    MatroidExtraction ext = extractMatroidCells(f, eps);
    ordered_json jm;
    jm["eps"] = printRational(ext.eps);
    ordered_json lam = ordered_json::array();
    for (const auto& l : ext.lambda) lam.push_back(printRational(l));
    jm["lambda"] = lam;
    jm["perturbedCells"] = subdivisionToJson(ext.perturbed)["cells"];
    jm["reports"] = matroidReportsToJson(ext.reports);
    j["matroidCells"] = jm;
  }
  emit(j, outPath);
  std::cerr << sub.cells.size() << " cells, "
            << edges.edges.size() << " edges, "
            << (edges.allUnitOrDifference ? "concave-type directions"
                                          : "non-concave direction present")
            << "\n";
  return 0;
}

int cmdRealize(const std::string& matPath, const std::string& lambdasArg,
               bool halve, std::uint64_t seed, const std::string& outPath) {
  SeriesMatrix b = parseMatrixFile(readFile(matPath));
  if (!b.isSquare()) throw InputError("realize: square matrix required");
  ScalingVector lambdas(b.rows + 1, Rational(0));
  if (!lambdasArg.empty()) {
    std::vector<Rational> vals;
    std::size_t pos = 0;
    while (pos <= lambdasArg.size()) {
      std::size_t comma = lambdasArg.find(',', pos);
      std::string tok = lambdasArg.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      vals.push_back(parseRational(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(vals.size()) != b.rows + 1)
      throw InputError("realize: --lambdas needs n+1 comma-separated values");
    lambdas = vals;
  }
  SetFunction fv = flagValuation(b);
  SetFunction w(b.rows);
  for (Mask s = 0; s < (Mask{1} << b.rows); ++s)
    w.at(s) = TropValue(fv.at(s).value() - lambdas[subsetSize(s)]);
  RealizationCertificate cert = realizeFlagPoint(w, b, lambdas, halve, seed);
  emit(certificateToJson(cert), outPath);
  std::cerr << "realized; achieved minors equal "
            << (halve ? "w" : "2w") << "\n";
  return 0;
}

int cmdMembership(const std::string& fnPath, std::uint64_t seed,
                  const std::string& outPath) {
  SetFunction f = readSetFunction(fnPath);
  MembershipVerdict v = membershipCheck(f, seed);
  ordered_json j;
  switch (v.status) {
    case Membership::Inside: j["status"] = "inside"; break;
    case Membership::Outside: j["status"] = "outside"; break;
    case Membership::WitnessNeeded: j["status"] = "witness-needed"; break;
  }
  if (!v.violation.empty()) j["violation"] = v.violation;
  if (v.witness) j["witness"] = printMatrixFile(*v.witness);
  j["seed"] = seed;
  emit(j, outPath);
  std::cerr << j["status"].get<std::string>() << "\n";
  return v.status == Membership::Outside ? 1 : 0;
}

int cmdIneq(const std::string& matPath, const std::string& setKey,
            const std::string& indicesArg, const std::string& outPath) {
  SeriesMatrix a = parseMatrixFile(readFile(matPath));
  if (!a.isSquare()) throw InputError("ineq: square matrix required");
  Mask baseSet = parseSubsetKey(setKey, a.rows);
  std::vector<int> indices;
  std::size_t pos = 0;
  while (pos <= indicesArg.size() && !indicesArg.empty()) {
    std::size_t comma = indicesArg.find(',', pos);
    std::string tok = indicesArg.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    indices.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  MinorInequalityReport rep = minorInequalityReport(a, baseSet, indices);
  emit(minorInequalityReportToJson(rep, a.rows), outPath);
  std::cerr << (rep.allPass ? "all permutations pass" : "violation found")
            << "\n";
  return rep.allPass ? 0 : 1;
}

int cmdVerifyPaper(const std::string& filter, const std::string& outPath) {
  ordered_json j;
  j["anchors"] = ordered_json::array();
  bool all = true;
  int ran = 0;
  for (const auto& anchor : suite::allAnchors()) {
    if (!filter.empty() && anchor.name.find(filter) == std::string::npos)
      continue;
    ++ran;
    std::string detail;
    bool pass = false;
    try {
      pass = anchor.run(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    all = all && pass;
    std::cerr << (pass ? "[PASS] " : "[FAIL] ") << anchor.name << " - "
              << anchor.description
              << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    ordered_json ja;
    ja["name"] = anchor.name;
    ja["description"] = anchor.description;
    ja["pass"] = pass;
    if (!detail.empty()) ja["detail"] = detail;
    j["anchors"].push_back(ja);
  }
  if (ran == 0) throw InputError("no anchors match filter: " + filter);
  j["allPass"] = all;
  emit(j, outPath);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tropmin: exact tropicalization of principal minors, discrete "
      "convexity certificates, cube subdivisions, and flag realizations"};
  app.require_subcommand(1);

  std::string fnPath, matPath, outPath, perturb, lambdasArg, setKey, indices,
      filter;
  bool useGram = false, halve = false;
  std::uint64_t seed = 20240521;

  auto* check = app.add_subcommand("check", "discrete-convexity verdicts for a set function");
  check->add_option("fn", fnPath, "set function JSON file")->required();
  check->add_option("-o,--output", outPath, "write JSON here");

  auto* minors = app.add_subcommand("minors", "tropicalized principal minors of a matrix");
  minors->add_option("matrix", matPath, "matrix file")->required();
  minors->add_flag("--gram", useGram, "tropicalize gram(B) instead of B");
  minors->add_option("-o,--output", outPath, "write JSON here");

  auto* subdivide = app.add_subcommand("subdivide", "upper-hull cube subdivision of a set function");
  subdivide->add_option("fn", fnPath, "set function JSON file")->required();
  subdivide->add_option("--perturb", perturb,
                        "strictify with this eps (a rational, or \"auto\") and "
                        "report matroid cells");
  subdivide->add_option("-o,--output", outPath, "write JSON here");

  auto* realize = app.add_subcommand("realize", "realize a flag valuation as a PD matrix");
  realize->add_option("matrix", matPath, "upper triangular matrix file")->required();
  realize->add_option("--lambdas", lambdasArg, "n+1 comma-separated tropical scalars (default zeros)");
  realize->add_flag("--halve", halve, "substitute t -> t^(1/2) so minors equal w");
  realize->add_option("--seed", seed, "seed for the generic mixer");
  realize->add_option("-o,--output", outPath, "write JSON here");

  auto* membership = app.add_subcommand("membership", "membership in the tropicalized PD minor cone");
  membership->add_option("fn", fnPath, "set function JSON file")->required();
  membership->add_option("--seed", seed, "seed for the witness search");
  membership->add_option("-o,--output", outPath, "write JSON here");

  auto* ineq = app.add_subcommand("ineq", "principal-minor inequality family on a constant PSD matrix");
  ineq->add_option("matrix", matPath, "matrix file with constant entries")->required();
  ineq->add_option("--set", setKey, "base subset S as a digit key (default empty)");
  ineq->add_option("--indices", indices, "3 or 4 comma-separated indices")->required();
  ineq->add_option("-o,--output", outPath, "write JSON here");

  auto* verify = app.add_subcommand("verify-paper", "run the built-in worked-example suite");
  verify->add_option("--filter", filter, "run only anchors whose name contains this");
  verify->add_option("-o,--output", outPath, "write JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmdCheck(fnPath, outPath);
    if (minors->parsed()) return cmdMinors(matPath, useGram, outPath);
    if (subdivide->parsed()) return cmdSubdivide(fnPath, perturb, outPath);
    if (realize->parsed())
      return cmdRealize(matPath, lambdasArg, halve, seed, outPath);
    if (membership->parsed()) return cmdMembership(fnPath, seed, outPath);
    if (ineq->parsed()) return cmdIneq(matPath, setKey, indices, outPath);
    if (verify->parsed()) return cmdVerifyPaper(filter, outPath);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
