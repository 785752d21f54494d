#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tropmin/inequalities.hpp"
#include "tropmin/realization.hpp"
#include "tropmin/subdivision.hpp"

// Built-in verification suite: re-derives the worked examples that anchor
// this library (the 3x3 positive definite family, the generic mixing
// computation, the strictly submodular non-concave function, the 4x4 minor
// table, and the two tightness families) and checks every pinned value
// exactly.
namespace tropmin::suite {

struct Anchor {
  std::string name;
  std::string description;
  std::function<bool(std::string&)> run;  // fills a detail string on failure
};

namespace fixtures {

inline SeriesMatrix b3() {
  return parseMatrixFile("3 3 real\n1; 1; 1\n0; t^2; t\n0; 0; t^2\n");
}

inline SeriesMatrix a3() {
  return parseMatrixFile(
      "3 3 real\n1; 1; 1\n1; 1 + t^4; 1 + t^3\n1; 1 + t^3; 1 + t^2 + t^4\n");
}

inline SeriesMatrix mixer3() {
  return parseMatrixFile("3 3 real\n1; 0; 0\n1; 1; 0\n2; 1; 1\n");
}

inline SeriesMatrix b4() {
  return parseMatrixFile(
      "4 4 real\n1; 1; 1; 1\n0; 1; 2; 3\n0; 0; 1; 1 + t\n0; 0; 0; 1\n");
}

inline SetFunction w3() {
  SetFunction f(3);
  const int vals[8] = {0, 0, 0, -4, 0, -2, -2, -8};
  for (Mask m = 0; m < 8; ++m) f.at(m) = TropValue(Rational(vals[m]));
  return f;
}

inline SetFunction strictNonConcave4() {
  SetFunction f(4);
  for (Mask m = 0; m < 16; ++m) {
    int v;
    switch (subsetSize(m)) {
      case 0: v = -6; break;
      case 1: v = (m == 0b0001) ? 0 : -3; break;
      case 2: v = -1; break;
      case 3: v = (m == 0b1110) ? 0 : -3; break;
      default: v = -6; break;
    }
    f.at(m) = TropValue(Rational(v));
  }
  return f;
}

}  // namespace fixtures

#define TROPMIN_ANCHOR_REQUIRE(cond)                     \
  do {                                                   \
    if (!(cond)) {                                       \
      detail = "failed: " #cond;                         \
      return false;                                      \
    }                                                    \
  } while (0)

inline std::vector<Anchor> allAnchors() {
  using namespace fixtures;
  std::vector<Anchor> anchors;

  anchors.push_back({"pd-3x3-valuations",
                     "valuations of the 3x3 family's minors",
                     [](std::string& detail) {
                       TROPMIN_ANCHOR_REQUIRE(val(parseSeries("t^2 + t^4")) == 2);
                       TROPMIN_ANCHOR_REQUIRE(nu(parseSeries("t^8")) == -8);
                       TROPMIN_ANCHOR_REQUIRE(
                           nu(parseSeries("-t + 2*t^2 + t^4")) == -1);
                       TROPMIN_ANCHOR_REQUIRE(isPositive(
                           parseSeries("t^2 - 2*t^3 + 2*t^4 + t^8")));
                       return true;
                     }});

  anchors.push_back({"pd-3x3-minors",
                     "Gram construction and tropicalized principal minors",
                     [](std::string& detail) {
                       TROPMIN_ANCHOR_REQUIRE(gram(b3()) == a3());
                       TROPMIN_ANCHOR_REQUIRE(isPositiveDefinite(a3()));
                       TROPMIN_ANCHOR_REQUIRE(tropPrincipalMinors(a3()) == w3());
                       return true;
                     }});

  anchors.push_back(
      {"pd-3x3-hierarchy", "discrete concavity of the tropicalized minors",
       [](std::string& detail) {
         SetFunction w = w3();
         TROPMIN_ANCHOR_REQUIRE(isSubmodular(w));
         TROPMIN_ANCHOR_REQUIRE(isStrictlySubmodular(w));
         TROPMIN_ANCHOR_REQUIRE(isMNaturalConcave(w));
         TROPMIN_ANCHOR_REQUIRE(isFlagDressian(w));
         TROPMIN_ANCHOR_REQUIRE(isDressian(multisymmetricLift(w)));
         for (int k = 0; k <= 2; ++k)
           TROPMIN_ANCHOR_REQUIRE(isDressian(homogenizeLayer(w, k)));
         return true;
       }});

  anchors.push_back(
      {"pd-3x3-subdivision", "induced regular subdivision of the 3-cube",
       [](std::string& detail) {
         CubeSubdivision sub = upperHullSubdivision(w3());
         EdgeReport edges = subdivisionEdges(sub);
         TROPMIN_ANCHOR_REQUIRE(edges.allUnitOrDifference);
         TROPMIN_ANCHOR_REQUIRE(isLayered(sub));
         bool bottomCell = false;
         for (const auto& cell : sub.cells)
           if (cell == std::vector<Mask>{0, 1, 2, 4}) bottomCell = true;
         TROPMIN_ANCHOR_REQUIRE(bottomCell);
         for (const auto& cell : sub.cells)
           TROPMIN_ANCHOR_REQUIRE(
               !(std::binary_search(cell.begin(), cell.end(), Mask{0}) &&
                 std::binary_search(cell.begin(), cell.end(), Mask{7})));
         return true;
       }});

  anchors.push_back(
      {"mixing-3x3", "generic lower-triangular mixing of the 3x3 family",
       [](std::string& detail) {
         SeriesMatrix mixed = matmul(mixer3(), b3());
         TROPMIN_ANCHOR_REQUIRE(minorDet(mixed, 0b110, 0b110) ==
                                parseSeries("-t + 2*t^2 + t^4"));
         for (Mask t : masksOfSize(3, 2))
           TROPMIN_ANCHOR_REQUIRE(nu(minorDet(mixed, t, 0b110)) == -1);
         TROPMIN_ANCHOR_REQUIRE(isTopHeavy(b3()));
         TROPMIN_ANCHOR_REQUIRE(isSubmodular(flagValuation(b3())));
         return true;
       }});

  anchors.push_back(
      {"strict-nonconcave-4",
       "strictly submodular function with a long subdivision edge",
       [](std::string& detail) {
         SetFunction f = strictNonConcave4();
         TROPMIN_ANCHOR_REQUIRE(isStrictlySubmodular(f));
         TROPMIN_ANCHOR_REQUIRE(!isMNaturalConcave(f));
         EdgeReport edges = subdivisionEdges(upperHullSubdivision(f));
         bool longEdge = false;
         for (const auto& e : edges.edges)
           if (e.u == 0b0001 && e.v == 0b1110) longEdge = true;
         TROPMIN_ANCHOR_REQUIRE(longEdge);
         TROPMIN_ANCHOR_REQUIRE(!edges.allUnitOrDifference);
         TROPMIN_ANCHOR_REQUIRE(!isLayered(upperHullSubdivision(f)));
         return true;
       }});

  anchors.push_back(
      {"minor-table-4x4", "minor table of the constant-flag 4x4 witness",
       [](std::string& detail) {
         SeriesMatrix b = b4();
         MinorTable table = minorTable(b);
         TROPMIN_ANCHOR_REQUIRE(table.at(0b0101, 0b1100) ==
                                TropValue(Rational(-1)));
         TROPMIN_ANCHOR_REQUIRE(table.at(0b0110, 0b1100) ==
                                TropValue(Rational(0)));
         TROPMIN_ANCHOR_REQUIRE(isTopHeavy(b));
         SetFunction fv = flagValuation(b);
         for (Mask m = 0; m < 16; ++m)
           TROPMIN_ANCHOR_REQUIRE(fv.at(m) == TropValue(Rational(0)));
         return true;
       }});

  anchors.push_back(
      {"minor-structure", "structural properties of triangular minor tables",
       [](std::string& detail) {
         TROPMIN_ANCHOR_REQUIRE(checkMinorTableProperties(b3()).allPass());
         TROPMIN_ANCHOR_REQUIRE(checkMinorTableProperties(b4()).allPass());
         TROPMIN_ANCHOR_REQUIRE(topHeavyOracle(b3()));
         TROPMIN_ANCHOR_REQUIRE(topHeavyOracle(b4()));
         return true;
       }});

  anchors.push_back(
      {"cauchy-binet-3x3", "valuation form of the Cauchy-Binet identity",
       [](std::string& detail) {
         SeriesMatrix b = b3();
         TROPMIN_ANCHOR_REQUIRE(verifyCauchyBinetValuation(b));
         SeriesMatrix a = gram(b);
         TROPMIN_ANCHOR_REQUIRE(nu(minorDet(a, 0b110, 0b110)) == -2);
         TROPMIN_ANCHOR_REQUIRE(nu(minorDet(b, 0b011, 0b110)) == -1);
         return true;
       }});

  anchors.push_back(
      {"realization-3x3", "flag point realized as a PD matrix",
       [](std::string& detail) {
         SeriesMatrix b = b3();
         SetFunction w = flagValuation(b);
         RealizationCertificate cert =
             realizeFlagPoint(w, b, ScalingVector(4, Rational(0)));
         for (Mask s = 0; s < 8; ++s)
           TROPMIN_ANCHOR_REQUIRE(cert.achievedMinors.at(s).value() ==
                                  2 * w.at(s).value());
         TROPMIN_ANCHOR_REQUIRE(cert.achievedMinors.at(0b110) ==
                                TropValue(Rational(-2)));
         RealizationCertificate halved =
             realizeFlagPoint(w, b, ScalingVector(4, Rational(0)), true);
         TROPMIN_ANCHOR_REQUIRE(halved.achievedMinors == w);
         TROPMIN_ANCHOR_REQUIRE(membershipCheck(w3()).status ==
                                Membership::Inside);
         return true;
       }});

  anchors.push_back(
      {"rank2-family", "rank-two PSD family attaining equality",
       [](std::string& detail) {
         for (const Rational& r : {Rational(-2), Rational(-1), Rational(0),
                                   Rational(1, 2), Rational(1), Rational(3)}) {
           SeriesMatrix a = rankTwoTightMatrix(r);
           TROPMIN_ANCHOR_REQUIRE(isPSDConstant(a));
           TROPMIN_ANCHOR_REQUIRE(allMinorsVanish(a, 3));
           TROPMIN_ANCHOR_REQUIRE(existsNonzeroMinor(a, 2));
           auto pm = [&](Mask s) { return constantPrincipalMinor(a, s); };
           Rational lhs = (r + 1) * pm(0b1001) * pm(0b0110) +
                          r * (r + 1) * pm(0b0101) * pm(0b1010);
           TROPMIN_ANCHOR_REQUIRE(lhs == r * pm(0b0011) * pm(0b1100));
         }
         return true;
       }});

  anchors.push_back(
      {"limit-family-3x3", "triple inequality tight only in the limit",
       [](std::string& detail) {
         TROPMIN_ANCHOR_REQUIRE(
             limitFamilyGap(Rational(1), Rational(1, 8), Rational(1)) == 18);
         TROPMIN_ANCHOR_REQUIRE(
             limitFamilyGap(Rational(-1), Rational(1, 2), Rational(2)) == 24);
         TROPMIN_ANCHOR_REQUIRE(
             limitFamilyGap(Rational(3), Rational(1, 100), Rational(0)) == 0);
         TROPMIN_ANCHOR_REQUIRE(
             limitFamilyGap(Rational(1), Rational(1, 8), Rational(1)) ==
             limitFamilyGap(Rational(1), Rational(1, 16), Rational(1)));
         TROPMIN_ANCHOR_REQUIRE(
             limitFamilyDetSign(Rational(1), Rational(1, 64), Rational(1)) == 1);
         return true;
       }});

  return anchors;
}

#undef TROPMIN_ANCHOR_REQUIRE

}  // namespace tropmin::suite
