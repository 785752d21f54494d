#pragma once

#include <random>
#include <set>
#include <vector>

#include "tropmin/linear.hpp"
#include "tropmin/series_matrix.hpp"
#include "tropmin/tropfn.hpp"

namespace testutil {

using namespace tropmin;

// --- fixtures from the worked examples ------------------------------------

// n=3 weight vector: 0 on sets of size <= 1, -4/-2/-2 on pairs, -8 on [3]
inline SetFunction pdMinorWeights3() {
  SetFunction f(3);
  auto set = [&](Mask m, int v) { f.at(m) = TropValue(Rational(v)); };
  set(0b000, 0);
  set(0b001, 0);
  set(0b010, 0);
  set(0b100, 0);
  set(0b011, -4);
  set(0b101, -2);
  set(0b110, -2);
  set(0b111, -8);
  return f;
}

// n=4 strictly submodular function whose subdivision has a long edge
inline SetFunction strictNonConcave4F() {
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

inline SeriesMatrix pdFactor3() {
  return parseMatrixFile("3 3 real\n1; 1; 1\n0; t^2; t\n0; 0; t^2\n");
}

inline SeriesMatrix pdGram3() {
  return parseMatrixFile(
      "3 3 real\n"
      "1; 1; 1\n"
      "1; 1 + t^4; 1 + t^3\n"
      "1; 1 + t^3; 1 + t^2 + t^4\n");
}

inline SeriesMatrix lowerMixer3() {
  return parseMatrixFile("3 3 real\n1; 0; 0\n1; 1; 0\n2; 1; 1\n");
}

inline SeriesMatrix flatFlagWitness4() {
  return parseMatrixFile(
      "4 4 real\n"
      "1; 1; 1; 1\n"
      "0; 1; 2; 3\n"
      "0; 0; 1; 1 + t\n"
      "0; 0; 0; 1\n");
}

// --- random generators (documented seeds live at the call sites) ----------

inline Rational randomSmallRational(std::mt19937_64& gen) {
  int num = static_cast<int>(gen() % 17) - 8;
  int den = (gen() % 4 == 0) ? 2 : 1;
  return Rational(num, den);
}

inline SetFunction randomSetFunction(int n, std::mt19937_64& gen) {
  SetFunction f(n);
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    f.at(m) = TropValue(randomSmallRational(gen));
  return f;
}

// entries c t^g + c' t^g' with small integer coefficients and exponents
// from {0, 1/2, 1, 2, 3}
inline PuiseuxPoly randomSeriesEntry(std::mt19937_64& gen, bool complexMode) {
  static const Rational exps[] = {Rational(0), Rational(1, 2), Rational(1),
                                  Rational(2), Rational(3)};
  PuiseuxPoly p;
  int terms = 1 + static_cast<int>(gen() % 2);
  for (int i = 0; i < terms; ++i) {
    Rational re(static_cast<int>(gen() % 7) - 3);
    Rational im = complexMode ? Rational(static_cast<int>(gen() % 7) - 3)
                              : Rational(0);
    p += PuiseuxPoly::monomial(exps[gen() % 5], Coefficient(re, im));
  }
  return p;
}

inline SeriesMatrix randomSeriesMatrix(int n, std::mt19937_64& gen,
                                       bool complexMode) {
  SeriesMatrix b(n, n, complexMode ? MatrixMode::Complex : MatrixMode::Real);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b.at(i, j) = randomSeriesEntry(gen, complexMode);
  return b;
}

// nonsingular random matrix (redraws until det != 0)
inline SeriesMatrix randomNonsingularMatrix(int n, std::mt19937_64& gen,
                                            bool complexMode) {
  while (true) {
    SeriesMatrix b = randomSeriesMatrix(n, gen, complexMode);
    if (!det(b).isZero()) return b;
  }
}

// random upper triangular with nonzero top-justified minors
inline SeriesMatrix randomUpperTriangular(int n, std::mt19937_64& gen) {
  while (true) {
    SeriesMatrix b(n, n, MatrixMode::Real);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) b.at(i, j) = randomSeriesEntry(gen, false);
    try {
      flagValuation(b);
      return b;
    } catch (const InputError&) {
    }
  }
}

// tropicalized principal minors of a random PD Gram matrix
inline SetFunction randomPDFunction(int n, std::mt19937_64& gen,
                                    bool complexMode) {
  while (true) {
    SeriesMatrix b = randomNonsingularMatrix(n, gen, complexMode);
    try {
      return tropPrincipalMinors(gram(b));
    } catch (const InputError&) {
    }
  }
}

// --- independent upper-hull oracle -----------------------------------------

// Tries every (n+1)-subset of lifted cube vertices as the span of a
// supporting functional and certifies it against all lifted points; the
// certified contact sets are exactly the maximal cells.
inline std::vector<std::vector<Mask>> bruteForceUpperHull(const SetFunction& f) {
  const int n = f.n;
  const Mask top = Mask{1} << n;
  std::set<std::vector<Mask>> cells;
  std::vector<Mask> all(top);
  for (Mask m = 0; m < top; ++m) all[m] = m;
  std::vector<int> pick(n + 1);
  // iterate over (n+1)-subsets of the 2^n vertices
  std::vector<int> idx(n + 1);
  for (int i = 0; i <= n; ++i) idx[i] = i;
  while (true) {
    RatMat a(n + 1, RatVec(n + 1, Rational(0)));
    RatVec rhs(n + 1);
    for (int r = 0; r <= n; ++r) {
      Mask m = all[idx[r]];
      for (int c = 0; c < n; ++c)
        if (m & (Mask{1} << c)) a[r][c] = 1;
      a[r][n] = 1;
      rhs[r] = f.at(m).value();
    }
    if (auto sol = solveSquare(a, rhs)) {
      bool valid = true;
      std::vector<Mask> contact;
      for (Mask m = 0; m < top && valid; ++m) {
        Rational lift = (*sol)[n];
        for (int c = 0; c < n; ++c)
          if (m & (Mask{1} << c)) lift += (*sol)[c];
        if (lift < f.at(m).value()) valid = false;
        else if (lift == f.at(m).value()) contact.push_back(m);
      }
      if (valid) cells.insert(contact);
    }
    // next combination
    int i = n;
    while (i >= 0 && idx[i] == static_cast<int>(top) - (n + 1) + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j <= n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {cells.begin(), cells.end()};
}

}  // namespace testutil
