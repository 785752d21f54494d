#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include <json.hpp>

#include "tropmin/linear.hpp"
#include "tropmin/series_matrix.hpp"

namespace tropmin {

// Coefficients of the quadratic q = c34 x1x2 + c24 x1x3 + c23 x1x4 +
// c14 x2x3 + c13 x2x4 + c12 x3x4.
struct QuadCoeffs {
  Rational c12, c13, c14, c23, c24, c34;
};

// The three products entering the one-parameter inequality family
// (r+1) x + r(r+1) y >= r z.
struct IneqTriple {
  Rational x, y, z;
};

// Extracts the rational value of a constant real entry.
inline Rational constantRealEntry(const PuiseuxPoly& p) {
  if (p.isZero()) return Rational(0);
  if (p.terms().size() != 1 || p.terms()[0].exp != 0 ||
      !p.terms()[0].coeff.isReal())
    throw InputError("constant rational entry required");
  return p.terms()[0].coeff.re;
}

// det of the Hessian of q: the symmetric 4x4 matrix with zero diagonal and
// the complementary coefficient in each off-diagonal slot.  The caller
// checks <= 0 (at most one positive eigenvalue forces that).
inline Rational hessianDetTest(const QuadCoeffs& q) {
  SeriesMatrix m(4, 4, MatrixMode::Real);
  auto set = [&](int i, int j, const Rational& v) {
    m.at(i, j) = PuiseuxPoly::constant(Coefficient(v));
    m.at(j, i) = PuiseuxPoly::constant(Coefficient(v));
  };
  set(0, 1, q.c34);
  set(0, 2, q.c24);
  set(0, 3, q.c23);
  set(1, 2, q.c14);
  set(1, 3, q.c13);
  set(2, 3, q.c12);
  return constantRealEntry(det(m));
}

inline IneqTriple quadProducts(const QuadCoeffs& q) {
  return {q.c14 * q.c23, q.c13 * q.c24, q.c12 * q.c34};
}

// The inequality family as a quadratic in r:  y r^2 + (x + y - z) r + x.
inline Rational ineqDiscriminant(const IneqTriple& t) {
  Rational b = t.x + t.y - t.z;
  return b * b - 4 * t.y * t.x;
}

// 2(xy+xz+yz) >= x^2+y^2+z^2 and x+y+z >= 0; equivalent to the inequality
// holding for every real r.
inline bool coneCondition(const IneqTriple& t) {
  Rational lhs = 2 * (t.x * t.y + t.x * t.z + t.y * t.z);
  Rational rhs = t.x * t.x + t.y * t.y + t.z * t.z;
  return lhs >= rhs && t.x + t.y + t.z >= 0;
}

// Symbolic all-r criterion via the discriminant: the quadratic in r is
// nonnegative everywhere iff the leading coefficient cases work out.  Kept
// as an independent route from coneCondition; the two must always agree.
inline bool allRCheck(const IneqTriple& t) {
  if (t.y < 0) return false;
  if (t.y == 0) return t.x == t.z && t.x >= 0;
  return ineqDiscriminant(t) <= 0;
}

// Whether equality (r+1)x + r(r+1)y = rz is attained at some real r, given
// that the family holds for all r.
inline bool equalityAttained(const IneqTriple& t) {
  if (!allRCheck(t)) return false;
  if (t.y == 0) return t.x == 0;
  return ineqDiscriminant(t) == 0;
}

// Evaluates the family at each sampled r; a cross-check for the symbolic
// criterion (cone true implies every sample true).
inline bool sampledRCheck(const IneqTriple& t, const std::vector<Rational>& rs) {
  for (const Rational& r : rs) {
    Rational value = (r + 1) * t.x + r * (r + 1) * t.y - r * t.z;
    if (value < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Checks on constant (rational or Gaussian-rational) matrices.

inline Rational constantPrincipalMinor(const SeriesMatrix& a, Mask s) {
  PuiseuxPoly d = minorDet(a, s, s);
  if (!d.isReal())
    throw InternalError("principal minor of a Hermitian matrix is not real");
  return constantRealEntry(d);
}

// PSD for symmetric/Hermitian constant matrices: all principal minors >= 0.
inline bool isPSDConstant(const SeriesMatrix& a) {
  if (!a.isSquare()) throw InputError("isPSDConstant: square matrix required");
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (!(a.at(i, j) == conj(a.at(j, i))))
        throw InputError("isPSDConstant: matrix is not symmetric/Hermitian");
  for (Mask s = 1; s < (Mask{1} << a.rows); ++s)
    if (constantPrincipalMinor(a, s) < 0) return false;
  return true;
}

// True iff every k x k minor (all row/column choices) vanishes.
inline bool allMinorsVanish(const SeriesMatrix& a, int k) {
  const Mask top = Mask{1} << a.rows;
  for (Mask t = 0; t < top; ++t) {
    if (subsetSize(t) != k) continue;
    for (Mask s = 0; s < (Mask{1} << a.cols); ++s) {
      if (subsetSize(s) != k) continue;
      if (!minorDet(a, t, s).isZero()) return false;
    }
  }
  return true;
}

inline bool existsNonzeroMinor(const SeriesMatrix& a, int k) {
  return !allMinorsVanish(a, k);
}

// Counts positive eigenvalues of a symmetric constant matrix exactly: the
// characteristic polynomial (Faddeev-LeVerrier) has all real roots, so the
// positive-root count is the Descartes sign-variation count.
inline int positiveEigenvalueCount(const SeriesMatrix& a) {
  if (!a.isSquare())
    throw InputError("positiveEigenvalueCount: square matrix required");
  const int n = a.rows;
  RatMat m(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m[i][j] = constantRealEntry(a.at(i, j));
      if (!(a.at(i, j) == a.at(j, i)))
        throw InputError("positiveEigenvalueCount: symmetric matrix required");
    }
  // char(x) = x^n + c[0] x^(n-1) + ... + c[n-1]
  RatVec c(n);
  RatMat nk(n, RatVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) nk[i][i] = 1;
  for (int k = 1; k <= n; ++k) {
    RatMat mk(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) mk[i][j] += m[i][l] * nk[l][j];
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += mk[i][i];
    c[k - 1] = -tr / k;
    nk = mk;
    for (int i = 0; i < n; ++i) nk[i][i] += c[k - 1];
  }
  int variations = 0;
  int lastSign = 1;  // leading coefficient of x^n
  for (int k = 0; k < n; ++k) {
    int s = sign(c[k]);
    if (s == 0) continue;
    if (s != lastSign) ++variations;
    lastSign = s;
  }
  return variations;
}

inline bool atMostOnePositiveEigenvalue(const SeriesMatrix& a) {
  return positiveEigenvalueCount(a) <= 1;
}

// ---------------------------------------------------------------------------
// Minor inequality report.

struct PermutationInstance {
  std::vector<int> indices;
  IneqTriple products;
  bool pass = false;
  Rational discriminant;
  bool equality = false;
};

struct MinorInequalityReport {
  Mask baseSet = 0;
  bool quadruple = false;
  std::vector<PermutationInstance> instances;
  bool allPass = true;
};

// Runs the inequality family on the principal minors of a constant PSD
// matrix for one base set S and a triple or quadruple of extra indices,
// over all permutations of those indices.
inline MinorInequalityReport minorInequalityReport(const SeriesMatrix& a,
                                                   Mask baseSet,
                                                   std::vector<int> indices) {
  if (!a.isSquare())
    throw InputError("minorInequalityReport: square matrix required");
  if (indices.size() != 3 && indices.size() != 4)
    throw InputError("minorInequalityReport: give 3 or 4 indices");
  Mask used = baseSet;
  for (int i : indices) {
    if (i < 1 || i > a.rows)
      throw InputError("minorInequalityReport: index out of range");
    Mask bit = Mask{1} << (i - 1);
    if (used & bit)
      throw InputError("minorInequalityReport: indices must be distinct and disjoint from S");
    used |= bit;
  }
  if (baseSet >= (Mask{1} << a.rows))
    throw InputError("minorInequalityReport: base set out of range");
  if (!isPSDConstant(a))
    throw InputError("minorInequalityReport: matrix is not PSD");

  auto pm = [&](Mask extra) { return constantPrincipalMinor(a, baseSet | extra); };
  auto bit = [](int i) { return Mask{1} << (i - 1); };

  MinorInequalityReport report;
  report.baseSet = baseSet;
  report.quadruple = indices.size() == 4;
  std::sort(indices.begin(), indices.end());
  do {
    PermutationInstance inst;
    inst.indices = indices;
    if (indices.size() == 4) {
      int i = indices[0], j = indices[1], k = indices[2], l = indices[3];
      inst.products = {pm(bit(i) | bit(l)) * pm(bit(j) | bit(k)),
                       pm(bit(i) | bit(k)) * pm(bit(j) | bit(l)),
                       pm(bit(i) | bit(j)) * pm(bit(k) | bit(l))};
    } else {
      int i = indices[0], j = indices[1], k = indices[2];
      inst.products = {pm(bit(i)) * pm(bit(j) | bit(k)),
                       pm(bit(j)) * pm(bit(i) | bit(k)),
                       pm(bit(k)) * pm(bit(i) | bit(j))};
    }
    inst.pass = coneCondition(inst.products);
    inst.discriminant = ineqDiscriminant(inst.products);
    inst.equality = equalityAttained(inst.products);
    if (inst.pass != allRCheck(inst.products))
      throw InternalError("cone condition disagrees with the symbolic criterion");
    if (!inst.pass) report.allPass = false;
    report.instances.push_back(std::move(inst));
  } while (std::next_permutation(indices.begin(), indices.end()));
  return report;
}

inline nlohmann::ordered_json minorInequalityReportToJson(
    const MinorInequalityReport& r, int n) {
  nlohmann::ordered_json j;
  j["baseSet"] = subsetKey(r.baseSet, n);
  j["mode"] = r.quadruple ? "quadruple" : "triple";
  j["allPass"] = r.allPass;
  j["permutations"] = nlohmann::ordered_json::array();
  for (const auto& inst : r.instances) {
    nlohmann::ordered_json ji;
    ji["indices"] = inst.indices;
    ji["x"] = printRational(inst.products.x);
    ji["y"] = printRational(inst.products.y);
    ji["z"] = printRational(inst.products.z);
    ji["pass"] = inst.pass;
    ji["discriminant"] = printRational(inst.discriminant);
    ji["equality"] = inst.equality;
    j["permutations"].push_back(ji);
  }
  return j;
}

// ---------------------------------------------------------------------------
// The two tightness families.

// The rank-two PSD family whose 2x2 principal minors satisfy the quadruple
// inequality with equality at the chosen r.
inline SeriesMatrix rankTwoTightMatrix(const Rational& r) {
  auto c = [](const Rational& v) {
    return PuiseuxPoly::constant(Coefficient(v));
  };
  SeriesMatrix a(4, 4, MatrixMode::Real);
  const Rational vals[4][4] = {
      {1, 1, 1, r},
      {1, 2, 2 - r, 2 * r - 1},
      {1, 2 - r, r * r - 2 * r + 2, -r * r + 3 * r - 1},
      {r, 2 * r - 1, -r * r + 3 * r - 1, 2 * r * r - 2 * r + 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a.at(i, j) = c(vals[i][j]);
  return a;
}

// Gap of the triple inequality on the 3x3 family with square-root entries:
// only the 1x1 and 2x2 principal minors enter, and those are rational in
// (r, lam, eps).  Returns (r+1) A_1 A_23 + r(r+1) A_2 A_13 - r A_3 A_12,
// which collapses to (1+r+r^2) eps (1+eps) (2+eps) independently of lam.
inline Rational limitFamilyGap(const Rational& r, const Rational& lam,
                             const Rational& eps) {
  if (eps < 0) throw InputError("limitFamilyGap: eps must be nonnegative");
  if (lam <= 0 || lam >= 1)
    throw InputError("limitFamilyGap: lam must satisfy 0 < lam < 1");
  if (r != -1 && !(lam < 1 / ((r + 1) * (r + 1))))
    throw InputError("limitFamilyGap: lam must be < 1/(r+1)^2");
  if (r != 0 && !(lam < 1 / (r * r)))
    throw InputError("limitFamilyGap: lam must be < 1/r^2");
  Rational d = 1 + eps;           // every 1x1 principal minor
  Rational dd = d * d;
  Rational a23 = dd - (1 - lam * r * r);
  Rational a13 = dd - (1 - lam);
  Rational a12 = dd - (1 - lam * (r + 1) * (r + 1));
  Rational gap = (r + 1) * d * a23 + r * (r + 1) * d * a13 - r * d * a12;
  Rational closed = (1 + r + r * r) * eps * (1 + eps) * (2 + eps);
  if (gap != closed)
    throw InternalError("limit-family gap disagrees with its closed form");
  return gap;
}

// ---------------------------------------------------------------------------
// Certified sign of det for the 3x3 family: rational interval enclosures of
// the three square roots, refined until the determinant interval excludes
// zero (or the refinement cap is reached).

struct RatInterval {
  Rational lo, hi;
  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
  }
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo,
             p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
  }
};

inline RatInterval sqrtEnclosure(const Rational& x, int bisections) {
  if (x < 0) throw InputError("sqrtEnclosure: negative radicand");
  if (x == 0) return {Rational(0), Rational(0)};
  Rational lo = 0, hi = x < 1 ? Rational(1) : x;
  for (int i = 0; i < bisections; ++i) {
    Rational mid = (lo + hi) / 2;
    if (mid * mid <= x)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

// +1, -1, or 0 when the sign cannot be decided within the refinement cap.
inline int limitFamilyDetSign(const Rational& r, const Rational& lam,
                            const Rational& eps, int maxBisections = 256) {
  limitFamilyGap(r, lam, eps);  // validates the parameter ranges
  for (int bits = 16; bits <= maxBisections; bits *= 2) {
    RatInterval d{1 + eps, 1 + eps};
    RatInterval p = sqrtEnclosure(1 - lam * (r + 1) * (r + 1), bits);
    RatInterval q = sqrtEnclosure(1 - lam, bits);
    RatInterval s = sqrtEnclosure(1 - lam * r * r, bits);
    // det of [[d,p,q],[p,d,s],[q,s,d]]
    RatInterval det = d * (d * d - s * s) - p * (p * d - s * q) +
                      q * (p * s - d * q);
    if (det.lo > 0) return 1;
    if (det.hi < 0) return -1;
  }
  return 0;
}

}  // namespace tropmin
