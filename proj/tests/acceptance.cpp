// Acceptance suite: one pass/fail line per criterion, all checks exact.
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "tropmin/inequalities.hpp"
#include "tropmin/realization.hpp"
#include "tropmin/subdivision.hpp"

using namespace tropmin;
using namespace testutil;

namespace {

int failures = 0;

void criterion(int num, const std::string& name, bool pass,
               const std::string& detail = "") {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << num << ": "
            << name;
  if (!pass && !detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++failures;
}

template <typename Fn>
void runCriterion(int num, const std::string& name, Fn fn) {
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  criterion(num, name, pass, detail);
}

#define ACCEPT_REQUIRE(cond)            \
  do {                                  \
    if (!(cond)) {                      \
      detail = "failed: " #cond;        \
      return false;                     \
    }                                   \
  } while (0)

bool criterion1(std::string& detail) {
  SeriesMatrix b = pdFactor3();
  SeriesMatrix a = gram(b);
  SetFunction w = tropPrincipalMinors(a);
  ACCEPT_REQUIRE(w == pdMinorWeights3());
  ACCEPT_REQUIRE(isSubmodular(w));
  ACCEPT_REQUIRE(isMNaturalConcave(w));
  ACCEPT_REQUIRE(isFlagDressian(w));
  ACCEPT_REQUIRE(isDressian(multisymmetricLift(w)));
  EdgeReport edges = subdivisionEdges(upperHullSubdivision(w));
  ACCEPT_REQUIRE(edges.allUnitOrDifference);
  return true;
}

bool criterion2(std::string& detail) {
  SeriesMatrix mixed = matmul(lowerMixer3(), pdFactor3());
  ACCEPT_REQUIRE(minorDet(mixed, 0b110, 0b110) ==
                 parseSeries("-t + 2*t^2 + t^4"));
  for (Mask t : masksOfSize(3, 2))
    ACCEPT_REQUIRE(nu(minorDet(mixed, t, 0b110)) == -1);
  return true;
}

bool criterion3(std::string& detail) {
  SetFunction f = strictNonConcave4F();
  ACCEPT_REQUIRE(isStrictlySubmodular(f));
  ACCEPT_REQUIRE(!isMNaturalConcave(f));
  EdgeReport edges = subdivisionEdges(upperHullSubdivision(f));
  bool longEdge = false;
  for (const auto& e : edges.edges)
    if (e.u == 0b0001 && e.v == 0b1110) longEdge = true;
  ACCEPT_REQUIRE(longEdge);
  return true;
}

bool criterion4(std::string& detail) {
  SeriesMatrix b = flatFlagWitness4();
  MinorTable table = minorTable(b);
  ACCEPT_REQUIRE(table.at(0b0101, 0b1100) == TropValue(Rational(-1)));
  ACCEPT_REQUIRE(table.at(0b0110, 0b1100) == TropValue(Rational(0)));
  ACCEPT_REQUIRE(isTopHeavy(b));
  SetFunction fv = flagValuation(b);
  for (Mask m = 0; m < 16; ++m)
    ACCEPT_REQUIRE(fv.at(m) == TropValue(Rational(0)));
  return true;
}

bool criterion5(std::string& detail) {
  for (const Rational& r : {Rational(-2), Rational(-1), Rational(0),
                            Rational(1, 2), Rational(1), Rational(3)}) {
    SeriesMatrix a = rankTwoTightMatrix(r);
    ACCEPT_REQUIRE(isPSDConstant(a));
    ACCEPT_REQUIRE(allMinorsVanish(a, 3));
    ACCEPT_REQUIRE(existsNonzeroMinor(a, 2));
    auto pm = [&](Mask s) { return constantPrincipalMinor(a, s); };
    Rational lhs = (r + 1) * pm(0b1001) * pm(0b0110) +
                   r * (r + 1) * pm(0b0101) * pm(0b1010);
    ACCEPT_REQUIRE(lhs == r * pm(0b0011) * pm(0b1100));
  }
  return true;
}

bool criterion6(std::string& detail) {
  std::mt19937_64 gen(20240701);  // documented seed
  int done = 0;
  while (done < 10) {
    Rational r(static_cast<int>(gen() % 11) - 5, 1 + static_cast<int>(gen() % 2));
    Rational eps(1 + static_cast<int>(gen() % 6), 1 + static_cast<int>(gen() % 4));
    // any lam below 1/(1+|r|)^2 is valid for every branch of the bound
    Rational denom = (1 + abs(r)) * (1 + abs(r));
    Rational lam1 = Rational(1, 3 + static_cast<int>(gen() % 5)) / denom;
    Rational lam2 = lam1 / 2;
    Rational g1 = limitFamilyGap(r, lam1, eps);
    Rational g2 = limitFamilyGap(r, lam2, eps);
    ACCEPT_REQUIRE(g1 == (1 + r + r * r) * eps * (1 + eps) * (2 + eps));
    ACCEPT_REQUIRE(g1 == g2);
    ++done;
  }
  return true;
}

bool criterion7(std::string& detail) {
  std::mt19937_64 gen(20240702);  // documented seed
  for (int i = 0; i < 100; ++i) {
    int n = 3 + i % 3;
    SetFunction w = randomPDFunction(n, gen, false);
    ACCEPT_REQUIRE(isSubmodular(w));
    ACCEPT_REQUIRE(isMNaturalConcave(w));
    ACCEPT_REQUIRE(isFlagDressian(w));
    if (n == 3) {
      Rational a = w.at(0b001).value() + w.at(0b110).value();
      Rational b = w.at(0b010).value() + w.at(0b101).value();
      Rational c = w.at(0b100).value() + w.at(0b011).value();
      Rational mx = std::max(a, std::max(b, c));
      ACCEPT_REQUIRE((a == mx) + (b == mx) + (c == mx) >= 2);
    }
  }
  for (int i = 0; i < 50; ++i) {
    int n = 3 + i % 3;
    SetFunction w = randomPDFunction(n, gen, true);
    ACCEPT_REQUIRE(isSubmodular(w));
    ACCEPT_REQUIRE(isMNaturalConcave(w));
    ACCEPT_REQUIRE(isFlagDressian(w));
    if (n == 3) {
      Rational a = w.at(0b001).value() + w.at(0b110).value();
      Rational b = w.at(0b010).value() + w.at(0b101).value();
      Rational c = w.at(0b100).value() + w.at(0b011).value();
      Rational mx = std::max(a, std::max(b, c));
      ACCEPT_REQUIRE((a == mx) + (b == mx) + (c == mx) >= 2);
    }
  }
  return true;
}

bool criterion8(std::string& detail) {
  std::mt19937_64 gen(20240703);  // documented seed
  int done = 0, tries = 0;
  while (done < 50 && tries < 5000) {
    ++tries;
    int n = 3 + static_cast<int>(gen() % 2);
    SeriesMatrix b = randomUpperTriangular(n, gen);
    SetFunction w = flagValuation(b);
    if (!isSubmodular(w)) continue;
    ++done;
    ACCEPT_REQUIRE(isTopHeavy(b));
    ScalingVector zeros(n + 1, Rational(0));
    RealizationCertificate cert =
        realizeFlagPoint(w, b, zeros, false, 5000 + done);
    for (Mask s = 0; s < (Mask{1} << n); ++s)
      ACCEPT_REQUIRE(cert.achievedMinors.at(s).value() == 2 * w.at(s).value());
    RealizationCertificate halved =
        realizeFlagPoint(w, b, zeros, true, 5000 + done);
    ACCEPT_REQUIRE(halved.achievedMinors == w);
  }
  ACCEPT_REQUIRE(done == 50);
  return true;
}

// shared corpus for criteria 9 and 10
std::vector<SetFunction> equivalenceCorpus() {
  std::mt19937_64 gen(20240704);  // documented seed
  std::vector<SetFunction> corpus;
  corpus.push_back(pdMinorWeights3());
  corpus.push_back(strictNonConcave4F());
  for (int iter = 0; iter < 210; ++iter) {
    int n = 2 + static_cast<int>(gen() % 3);
    switch (iter % 4) {
      case 0:
        corpus.push_back(randomPDFunction(n, gen, false));
        break;
      case 1: {
        SetFunction f = randomPDFunction(n, gen, false);
        Mask m = static_cast<Mask>(gen() % (Mask{1} << n));
        f.at(m) = TropValue(f.at(m).value() + randomSmallRational(gen));
        corpus.push_back(f);
        break;
      }
      default:
        corpus.push_back(randomSetFunction(n, gen));
        break;
    }
  }
  return corpus;
}

bool criterion9(std::string& detail) {
  auto corpus = equivalenceCorpus();
  ACCEPT_REQUIRE(corpus.size() >= 200);
  int members = 0;
  for (const SetFunction& f : corpus) {
    bool c1 = isMNaturalConcave(f);
    bool c2 = isDressian(multisymmetricLift(f));
    bool c3 = isSubmodular(f);
    if (c3)
      for (int k = 0; k <= f.n - 1 && c3; ++k)
        c3 = isDressian(homogenizeLayer(f, k));
    bool c4 = isSubmodular(f) && isFlagDressian(f);
    bool c5 = subdivisionEdges(upperHullSubdivision(f)).allUnitOrDifference;
    ACCEPT_REQUIRE(c1 == c2);
    ACCEPT_REQUIRE(c1 == c3);
    ACCEPT_REQUIRE(c1 == c4);
    ACCEPT_REQUIRE(c1 == c5);
    if (c1) ++members;
  }
  ACCEPT_REQUIRE(members >= 40);
  ACCEPT_REQUIRE(members <= static_cast<int>(corpus.size()) - 40);
  return true;
}

bool criterion10(std::string& detail) {
  auto corpus = equivalenceCorpus();
  int concaveCount = 0;
  for (const SetFunction& f : corpus) {
    if (!isMNaturalConcave(f)) continue;
    ++concaveCount;
    ACCEPT_REQUIRE(isStrictlySubmodular(f) ==
                   isLayered(upperHullSubdivision(f)));
    MatroidExtraction ext = extractMatroidCells(f);
    for (const auto& rep : ext.reports) ACCEPT_REQUIRE(rep.isMatroid);
  }
  ACCEPT_REQUIRE(concaveCount >= 40);
  return true;
}

bool criterion11(std::string& detail) {
  std::mt19937_64 gen(20240705);  // documented seed
  for (int iter = 0; iter < 500; ++iter) {
    QuadCoeffs q{randomSmallRational(gen), randomSmallRational(gen),
                 randomSmallRational(gen), randomSmallRational(gen),
                 randomSmallRational(gen), randomSmallRational(gen)};
    ACCEPT_REQUIRE(hessianDetTest(q) == ineqDiscriminant(quadProducts(q)));
  }
  int pass = 0, fail = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    IneqTriple t{randomSmallRational(gen), randomSmallRational(gen),
                 randomSmallRational(gen)};
    switch (iter % 5) {
      case 0: t.y = 0; t.z = t.x; break;
      case 1: t = {t.x, t.x, t.x}; break;
      case 2: t.y = 0; break;
      default: break;
    }
    ACCEPT_REQUIRE(coneCondition(t) == allRCheck(t));
    (coneCondition(t) ? pass : fail) += 1;
  }
  ACCEPT_REQUIRE(pass > 50);
  ACCEPT_REQUIRE(fail > 50);
  return true;
}

#undef ACCEPT_REQUIRE

}  // namespace

int main() {
  runCriterion(1, "3x3 family end-to-end tropicalization and hierarchy",
               criterion1);
  runCriterion(2, "generic mixing of the 3x3 family, exact minors",
               criterion2);
  runCriterion(3, "strictly submodular non-concave function and its long edge",
               criterion3);
  runCriterion(4, "4x4 minor table values, top heaviness, flat flag valuation",
               criterion4);
  runCriterion(5, "rank-two PSD family: PSD, rank, exact equality",
               criterion5);
  runCriterion(6, "limit family gap identity, lam-independent", criterion6);
  runCriterion(7, "random PD tropicalizations satisfy the hierarchy (150 seeds)",
               criterion7);
  runCriterion(8, "flag realization round trip on 50 seeded triangular points",
               criterion8);
  runCriterion(9, "five characterizations agree on a 200+ mixed corpus",
               criterion9);
  runCriterion(10, "strictness iff layered; every matroid cell passes exchange",
               criterion10);
  runCriterion(11, "Hessian-discriminant identity and cone criterion agreement",
               criterion11);

  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
