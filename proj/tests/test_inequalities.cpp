#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "tropmin/inequalities.hpp"

using namespace tropmin;
using namespace testutil;

namespace {

QuadCoeffs randomQuad(std::mt19937_64& gen, bool nonneg) {
  auto draw = [&] {
    Rational v(static_cast<int>(gen() % 9) - (nonneg ? 0 : 4),
               1 + static_cast<int>(gen() % 2));
    return v;
  };
  return {draw(), draw(), draw(), draw(), draw(), draw()};
}

SeriesMatrix constDiag(std::vector<Rational> d) {
  SeriesMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    m.at(static_cast<int>(i), static_cast<int>(i)) =
        PuiseuxPoly::constant(Coefficient(d[i]));
  return m;
}

}  // namespace

TEST_CASE("hessianDetTest examples") {
  QuadCoeffs ones{1, 1, 1, 1, 1, 1};
  CHECK(hessianDetTest(ones) == -3);

  QuadCoeffs zeros{0, 0, 0, 0, 0, 0};
  CHECK(hessianDetTest(zeros) == 0);

  // 2x2 principal minors of the rank-two family at r = 1: the quadratic is
  // identically satisfied, so its discriminant vanishes
  SeriesMatrix a = rankTwoTightMatrix(Rational(1));
  auto pm = [&](Mask s) { return constantPrincipalMinor(a, s); };
  QuadCoeffs q{pm(0b0011), pm(0b0101), pm(0b1001),
               pm(0b0110), pm(0b1010), pm(0b1100)};
  CHECK(hessianDetTest(q) == 0);
}

TEST_CASE("Hessian determinant equals the quadratic discriminant") {
  std::mt19937_64 gen(20240625);  // documented seed
  for (int iter = 0; iter < 550; ++iter) {
    QuadCoeffs q = randomQuad(gen, iter % 2 == 0);
    CHECK(hessianDetTest(q) == ineqDiscriminant(quadProducts(q)));
  }
}

TEST_CASE("nonpositive Hessian determinant gives the cone condition") {
  std::mt19937_64 gen(20240626);
  int hits = 0;
  for (int iter = 0; iter < 800; ++iter) {
    QuadCoeffs q = randomQuad(gen, true);
    if (hessianDetTest(q) > 0) continue;
    ++hits;
    CHECK(coneCondition(quadProducts(q)));
  }
  CHECK(hits > 100);
}

TEST_CASE("positive eigenvalue counting") {
  // J - I on 4 points: eigenvalues 3, -1, -1, -1
  QuadCoeffs ones{1, 1, 1, 1, 1, 1};
  SeriesMatrix q(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) q.at(i, j) = PuiseuxPoly::one();
  CHECK(positiveEigenvalueCount(q) == 1);
  CHECK(atMostOnePositiveEigenvalue(q));

  CHECK(positiveEigenvalueCount(SeriesMatrix::identity(4)) == 4);
  CHECK_FALSE(atMostOnePositiveEigenvalue(SeriesMatrix::identity(4)));
  CHECK(positiveEigenvalueCount(constDiag({Rational(1), Rational(2),
                                           Rational(-1)})) == 2);
  CHECK(positiveEigenvalueCount(constDiag({Rational(0), Rational(0)})) == 0);

  // Lorentzian hypothesis route: at most one positive eigenvalue forces a
  // nonpositive determinant for the zero-diagonal Hessian
  std::mt19937_64 gen(20240627);
  for (int iter = 0; iter < 120; ++iter) {
    QuadCoeffs c = randomQuad(gen, true);
    SeriesMatrix h(4, 4);
    auto set = [&](int i, int j, const Rational& v) {
      h.at(i, j) = PuiseuxPoly::constant(Coefficient(v));
      h.at(j, i) = h.at(i, j);
    };
    set(0, 1, c.c34);
    set(0, 2, c.c24);
    set(0, 3, c.c23);
    set(1, 2, c.c14);
    set(1, 3, c.c13);
    set(2, 3, c.c12);
    if (atMostOnePositiveEigenvalue(h)) CHECK(hessianDetTest(c) <= 0);
  }
}

TEST_CASE("coneCondition examples") {
  CHECK(coneCondition({Rational(1), Rational(1), Rational(1)}));
  CHECK_FALSE(coneCondition({Rational(1), Rational(0), Rational(0)}));

  // products of the rank-two family at r = 2: equality at the double root
  SeriesMatrix a = rankTwoTightMatrix(Rational(2));
  auto pm = [&](Mask s) { return constantPrincipalMinor(a, s); };
  IneqTriple t{pm(0b1001) * pm(0b0110), pm(0b0101) * pm(0b1010),
               pm(0b0011) * pm(0b1100)};
  CHECK(t.x == 4);
  CHECK(t.y == 1);
  CHECK(t.z == 9);
  CHECK(coneCondition(t));
  CHECK(equalityAttained(t));
  CHECK(ineqDiscriminant(t) == 0);
}

TEST_CASE("sampledRCheck examples") {
  std::vector<Rational> rs = {Rational(-2), Rational(-1), Rational(0),
                              Rational(1, 2), Rational(1), Rational(3)};
  CHECK(sampledRCheck({Rational(1), Rational(1), Rational(1)}, rs));
  CHECK_FALSE(sampledRCheck({Rational(0), Rational(0), Rational(1)},
                            {Rational(1)}));

  // the rank-two equality family evaluates to 4(r-3)^2 at matrix r = 3
  SeriesMatrix a = rankTwoTightMatrix(Rational(3));
  auto pm = [&](Mask s) { return constantPrincipalMinor(a, s); };
  IneqTriple t{pm(0b1001) * pm(0b0110), pm(0b0101) * pm(0b1010),
               pm(0b0011) * pm(0b1100)};
  CHECK(sampledRCheck(t, rs));
  Rational atThree = (Rational(3) + 1) * t.x + Rational(3) * 4 * t.y -
                     Rational(3) * t.z;
  CHECK(atThree == 0);
}

TEST_CASE("cone condition is equivalent to the symbolic all-r criterion") {
  std::mt19937_64 gen(20240628);  // documented seed
  auto drawTriple = [&](bool boundary) {
    auto v = [&] {
      return Rational(static_cast<int>(gen() % 13) - 4,
                      1 + static_cast<int>(gen() % 2));
    };
    IneqTriple t{v(), v(), v()};
    if (boundary) {
      switch (gen() % 4) {
        case 0: t.y = 0; t.z = t.x; break;                   // linear, tight
        case 1: t.y = 0; break;                              // linear branch
        case 2: t = {t.x, t.x, t.x}; break;                  // diagonal ray
        default: t = {Rational(0), Rational(0), Rational(0)}; break;
      }
    }
    return t;
  };
  int agreePass = 0, agreeFail = 0;
  for (int iter = 0; iter < 1100; ++iter) {
    IneqTriple t = drawTriple(iter % 5 == 0);
    bool cone = coneCondition(t);
    CHECK(cone == allRCheck(t));
    // sampled cross-check on a fixed grid
    if (cone)
      CHECK(sampledRCheck(t, {Rational(-3), Rational(-1), Rational(-1, 2),
                              Rational(0), Rational(2, 3), Rational(5)}));
    (cone ? agreePass : agreeFail) += 1;
  }
  CHECK(agreePass > 100);
  CHECK(agreeFail > 100);
}

TEST_CASE("minorInequalityReport") {
  // the identity on 4 points, S empty: products (1,1,1)
  MinorInequalityReport rep =
      minorInequalityReport(SeriesMatrix::identity(4), 0, {1, 2, 3, 4});
  CHECK(rep.allPass);
  CHECK(rep.instances.size() == 24);
  for (const auto& inst : rep.instances) {
    CHECK(inst.products.x == 1);
    CHECK(inst.products.y == 1);
    CHECK(inst.products.z == 1);
    CHECK(inst.pass);
  }

  // rank-two family at r = 3: every permutation passes, equality attained
  MinorInequalityReport rep54 =
      minorInequalityReport(rankTwoTightMatrix(Rational(3)), 0, {1, 2, 3, 4});
  CHECK(rep54.allPass);
  bool sawEquality = false;
  for (const auto& inst : rep54.instances) sawEquality |= inst.equality;
  CHECK(sawEquality);

  // a zero row/column degenerates every product to zero
  MinorInequalityReport repDeg = minorInequalityReport(
      constDiag({Rational(1), Rational(1), Rational(1), Rational(0)}), 0,
      {1, 2, 3, 4});
  CHECK(repDeg.allPass);
  for (const auto& inst : repDeg.instances) {
    CHECK(inst.products.x == 0);
    CHECK(inst.products.y == 0);
    CHECK(inst.products.z == 0);
    CHECK(inst.equality);
  }

  // triple mode
  MinorInequalityReport rep3 =
      minorInequalityReport(SeriesMatrix::identity(3), 0, {1, 2, 3});
  CHECK(rep3.allPass);
  CHECK(rep3.instances.size() == 6);

  // base set S shifts which minors are used
  MinorInequalityReport repS =
      minorInequalityReport(SeriesMatrix::identity(5), 0b10000, {1, 2, 3, 4});
  CHECK(repS.allPass);

  CHECK_THROWS_AS(minorInequalityReport(
                      constDiag({Rational(1), Rational(-1), Rational(1),
                                 Rational(1)}),
                      0, {1, 2, 3, 4}),
                  InputError);
  CHECK_THROWS_AS(
      minorInequalityReport(SeriesMatrix::identity(4), 0b0001, {1, 2, 3}),
      InputError);
  CHECK_THROWS_AS(
      minorInequalityReport(SeriesMatrix::identity(4), 0, {1, 2}),
      InputError);
}

TEST_CASE("inequality family products on random PSD Gram matrices") {
  std::mt19937_64 gen(20240629);  // documented seed
  for (int iter = 0; iter < 60; ++iter) {
    // random integer G, A = G^T G is PSD with rational entries
    SeriesMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        g.at(i, j) = PuiseuxPoly::constant(
            Coefficient(Rational(static_cast<int>(gen() % 7) - 3)));
    SeriesMatrix a = matmul(conjTranspose(g), g);
    MinorInequalityReport rep = minorInequalityReport(a, 0, {1, 2, 3, 4});
    CHECK(rep.allPass);
    MinorInequalityReport rep3 = minorInequalityReport(a, 0, {1, 2, 3});
    CHECK(rep3.allPass);
  }
}

TEST_CASE("rankTwoTightMatrix") {
  for (const Rational& r :
       {Rational(-2), Rational(-1), Rational(0), Rational(1, 2), Rational(1),
        Rational(3), Rational(-5, 3)}) {
    SeriesMatrix a = rankTwoTightMatrix(r);
    CHECK(isPSDConstant(a));
    CHECK(allMinorsVanish(a, 3));      // rank <= 2
    CHECK(existsNonzeroMinor(a, 2));   // rank exactly 2
    auto pm = [&](Mask s) { return constantPrincipalMinor(a, s); };
    Rational lhs = (r + 1) * pm(0b1001) * pm(0b0110) +
                   r * (r + 1) * pm(0b0101) * pm(0b1010);
    Rational rhs = r * pm(0b0011) * pm(0b1100);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("limitFamilyGap") {
  CHECK(limitFamilyGap(Rational(1), Rational(1, 8), Rational(1)) == 18);
  CHECK(limitFamilyGap(Rational(-1), Rational(1, 2), Rational(2)) == 24);
  CHECK(limitFamilyGap(Rational(2), Rational(1, 100), Rational(0)) == 0);

  // lam-independence
  std::mt19937_64 gen(20240630);
  for (int iter = 0; iter < 30; ++iter) {
    Rational r(static_cast<int>(gen() % 9) - 4, 1 + static_cast<int>(gen() % 2));
    Rational eps(1 + static_cast<int>(gen() % 5), 1 + static_cast<int>(gen() % 3));
    Rational lam1(1, 100 + static_cast<int>(gen() % 50));
    Rational lam2(1, 200 + static_cast<int>(gen() % 50));
    Rational g1 = limitFamilyGap(r, lam1, eps);
    Rational g2 = limitFamilyGap(r, lam2, eps);
    CHECK(g1 == g2);
    CHECK(g1 == (1 + r + r * r) * eps * (1 + eps) * (2 + eps));
  }

  CHECK_THROWS_AS(limitFamilyGap(Rational(1), Rational(1, 2), Rational(1)),
                  InputError);  // lam >= 1/(r+1)^2
  CHECK_THROWS_AS(limitFamilyGap(Rational(1), Rational(0), Rational(1)),
                  InputError);
  CHECK_THROWS_AS(limitFamilyGap(Rational(1), Rational(1, 8), Rational(-1)),
                  InputError);
}

TEST_CASE("limitFamilyDetSign certifies positivity for small lam") {
  CHECK(limitFamilyDetSign(Rational(1), Rational(1, 64), Rational(1)) == 1);
  CHECK(limitFamilyDetSign(Rational(-1), Rational(1, 16), Rational(1, 2)) == 1);
  CHECK(limitFamilyDetSign(Rational(0), Rational(1, 32), Rational(2)) == 1);
}
