#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tropmin/series_matrix.hpp"
#include "tropmin/tropfn.hpp"

namespace tropmin {

// Gale partial order on equal-size subsets: S <= T iff the j-th smallest
// element of S is at most the j-th smallest element of T, for every j.
inline bool galeLeq(Mask s, Mask t) {
  if (subsetSize(s) != subsetSize(t))
    throw InputError("galeLeq: subsets differ in size");
  auto se = maskElements(s);
  auto te = maskElements(t);
  for (std::size_t j = 0; j < se.size(); ++j)
    if (se[j] > te[j]) return false;
  return true;
}

inline bool galeLess(Mask s, Mask t) { return s != t && galeLeq(s, t); }

// w(T,S) = nu(det B(T,S)) on all same-size pairs; -inf marks zero minors.
struct MinorTable {
  int n = 0;
  std::map<std::pair<Mask, Mask>, TropValue> w;

  const TropValue& at(Mask t, Mask s) const {
    auto it = w.find({t, s});
    if (it == w.end()) throw InputError("minor table: pair not present");
    return it->second;
  }
};

inline MinorTable minorTable(const SeriesMatrix& b) {
  if (!b.isSquare()) throw InputError("minorTable: square matrix required");
  MinorTable table;
  table.n = b.rows;
  const Mask top = Mask{1} << b.rows;
  for (Mask t = 0; t < top; ++t)
    for (Mask s = 0; s < top; ++s) {
      if (subsetSize(t) != subsetSize(s)) continue;
      PuiseuxPoly d = minorDet(b, t, s);
      table.w[{t, s}] = d.isZero() ? TropValue::bottom() : TropValue(nu(d));
    }
  return table;
}

// Independent determinant route (full permutation expansion) used as the
// oracle side of the top-heaviness check and by the tests.
inline PuiseuxPoly detByPermutations(const SeriesMatrix& b, Mask rowsMask,
                                     Mask colsMask) {
  if (subsetSize(rowsMask) != subsetSize(colsMask))
    throw InputError("detByPermutations: row and column sets differ in size");
  auto rowIdx = maskElements(rowsMask);
  auto colIdx = maskElements(colsMask);
  const int k = static_cast<int>(rowIdx.size());
  if (k == 0) return PuiseuxPoly::one();
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  PuiseuxPoly acc;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    PuiseuxPoly prod = PuiseuxPoly::one();
    for (int i = 0; i < k && !prod.isZero(); ++i)
      prod *= b.at(rowIdx[i] - 1, colIdx[perm[i]] - 1);
    if (inversions % 2 == 0)
      acc += prod;
    else
      acc -= prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// nu(B([|S|], S)) >= nu(B(T, S)) for all same-size S, T (with -inf below
// everything).  Requires an upper triangular B with nonzero top-justified
// minors.
inline bool isTopHeavy(const SeriesMatrix& b) {
  flagValuation(b);  // validates the preconditions
  MinorTable table = minorTable(b);
  const Mask top = Mask{1} << b.rows;
  for (Mask s = 0; s < top; ++s) {
    Mask justified = (Mask{1} << subsetSize(s)) - 1;
    const TropValue& lead = table.at(justified, s);
    for (Mask t = 0; t < top; ++t) {
      if (subsetSize(t) != subsetSize(s)) continue;
      if (!(lead >= table.at(t, s))) return false;
    }
  }
  return true;
}

// Conclusion of the top-heaviness theorem, re-derived with the independent
// permutation-expansion determinants.  Always true when the hypothesis
// (submodular flag valuation) holds; a false return means a bug.
inline bool topHeavyOracle(const SeriesMatrix& b) {
  SetFunction fv = flagValuation(b);
  if (!isSubmodular(fv))
    throw InputError("top-heaviness oracle requires a submodular flag valuation");
  const Mask top = Mask{1} << b.rows;
  for (Mask s = 0; s < top; ++s) {
    Mask justified = (Mask{1} << subsetSize(s)) - 1;
    PuiseuxPoly leadPoly = detByPermutations(b, justified, s);
    if (leadPoly.isZero()) return false;
    Rational lead = nu(leadPoly);
    for (Mask t = 0; t < top; ++t) {
      if (subsetSize(t) != subsetSize(s)) continue;
      PuiseuxPoly d = detByPermutations(b, t, s);
      if (!d.isZero() && nu(d) > lead) return false;
    }
  }
  return true;
}

// Per-property outcome of the minor-table sanity suite.
struct PropertyCheck {
  bool pass = true;
  std::string witness;
};

struct MinorTablePropertyReport {
  PropertyCheck finiteTopJustified;      // (i)
  PropertyCheck vanishBelowGale;         // (ii)
  PropertyCheck intervalPrefixAdditive;  // (iii)
  PropertyCheck cornerAdditive;          // (iv)
  PropertyCheck threeTermPluecker;       // (v)
  bool allPass() const {
    return finiteTopJustified.pass && vanishBelowGale.pass &&
           intervalPrefixAdditive.pass && cornerAdditive.pass &&
           threeTermPluecker.pass;
  }
};

namespace detail {

inline std::string pairWitness(Mask t, Mask s, int n) {
  return "(T={" + subsetKey(t, n) + "}, S={" + subsetKey(s, n) + "})";
}

}  // namespace detail

// Exhaustive desk-scale verification of the five structural properties of
// the minor table of an upper triangular matrix: (i) finite top-justified
// values, (ii) vanishing strictly below the Gale order, (iii) additivity
// under prefix intervals, (iv) additivity under appended corners, (v) the
// 3-term tropical Pluecker relations per column set.
inline MinorTablePropertyReport checkMinorTableProperties(const SeriesMatrix& b) {
  flagValuation(b);  // validates upper triangular + nonzero top minors
  const int n = b.rows;
  const Mask top = Mask{1} << n;
  MinorTable table = minorTable(b);
  MinorTablePropertyReport report;

  for (Mask s = 0; s < top; ++s) {
    Mask justified = (Mask{1} << subsetSize(s)) - 1;
    if (!table.at(justified, s).isFinite()) {
      report.finiteTopJustified = {false, "S={" + subsetKey(s, n) + "}"};
      break;
    }
  }

  for (Mask t = 0; t < top && report.vanishBelowGale.pass; ++t)
    for (Mask s = 0; s < top; ++s) {
      if (subsetSize(t) != subsetSize(s) || !galeLess(s, t)) continue;
      if (table.at(t, s).isFinite()) {
        report.vanishBelowGale = {false, detail::pairWitness(t, s, n)};
        break;
      }
    }

  // (iii): intervals I = {a..c} strictly below min(T u S)
  for (int a = 1; a <= n && report.intervalPrefixAdditive.pass; ++a) {
    for (int c = a; c <= n; ++c) {
      Mask interval = 0;
      for (int i = a; i <= c; ++i) interval |= Mask{1} << (i - 1);
      TropValue diag(Rational(0));
      for (int i = a; i <= c; ++i)
        diag = diag + table.at(Mask{1} << (i - 1), Mask{1} << (i - 1));
      Mask belowOrAt = (Mask{1} << c) - 1;  // elements <= c
      for (Mask t = 0; t < top; ++t) {
        if (t & belowOrAt) continue;
        for (Mask s = 0; s < top; ++s) {
          if (s & belowOrAt) continue;
          if (subsetSize(t) != subsetSize(s)) continue;
          if (table.at(interval | t, interval | s) !=
              diag + table.at(t, s)) {
            report.intervalPrefixAdditive = {
                false, "I={" + subsetKey(interval, n) + "} " +
                           detail::pairWitness(t, s, n)};
            break;
          }
        }
        if (!report.intervalPrefixAdditive.pass) break;
      }
      if (!report.intervalPrefixAdditive.pass) break;
    }
  }

  // (iv): append a strictly larger corner (t, s) to (T, S)
  for (Mask t = 0; t < top && report.cornerAdditive.pass; ++t) {
    for (Mask s = 0; s < top; ++s) {
      if (subsetSize(t) != subsetSize(s)) continue;
      auto all = maskElements(t | s);
      int maxEl = all.empty() ? 0 : all.back();
      for (int tt = maxEl + 1; tt <= n; ++tt) {
        for (int ss = maxEl + 1; ss <= n; ++ss) {
          Mask tBit = Mask{1} << (tt - 1), sBit = Mask{1} << (ss - 1);
          if (table.at(t | tBit, s | sBit) !=
              table.at(t, s) + table.at(tBit, sBit)) {
            report.cornerAdditive = {
                false, detail::pairWitness(t, s, n) + " + (t=" +
                           std::to_string(tt) + ", s=" + std::to_string(ss) +
                           ")"};
            break;
          }
        }
        if (!report.cornerAdditive.pass) break;
      }
      if (!report.cornerAdditive.pass) break;
    }
  }

  // (v): for each fixed column set S, T -> w(T,S) obeys the 3-term
  // relations: for R and i<j<k<l outside R, the max of the three pairings
  // is attained at least twice (all -inf is vacuous).
  for (Mask s = 0; s < top && report.threeTermPluecker.pass; ++s) {
    const int k = subsetSize(s);
    if (k < 2) continue;
    for (Mask r = 0; r < top; ++r) {
      if (subsetSize(r) != k - 2) continue;
      auto outside = maskElements(((Mask{1} << n) - 1) & ~r);
      const int m = static_cast<int>(outside.size());
      for (int a = 0; a < m; ++a)
        for (int bIdx = a + 1; bIdx < m; ++bIdx)
          for (int c = bIdx + 1; c < m; ++c)
            for (int d = c + 1; d < m; ++d) {
              Mask ia = Mask{1} << (outside[a] - 1);
              Mask ib = Mask{1} << (outside[bIdx] - 1);
              Mask ic = Mask{1} << (outside[c] - 1);
              Mask id = Mask{1} << (outside[d] - 1);
              TropValue terms[3] = {
                  table.at(r | ia | ib, s) + table.at(r | ic | id, s),
                  table.at(r | ia | ic, s) + table.at(r | ib | id, s),
                  table.at(r | ia | id, s) + table.at(r | ib | ic, s)};
              TropValue best = TropValue::bottom();
              int hits = 0;
              for (const auto& v : terms) {
                if (!v.isFinite()) continue;
                if (best < v) {
                  best = v;
                  hits = 1;
                } else if (v == best) {
                  ++hits;
                }
              }
              if (best.isFinite() && hits < 2) {
                report.threeTermPluecker = {
                    false, "S={" + subsetKey(s, n) + "}, R={" +
                               subsetKey(r, n) + "}, elements " +
                               std::to_string(outside[a]) + "," +
                               std::to_string(outside[bIdx]) + "," +
                               std::to_string(outside[c]) + "," +
                               std::to_string(outside[d])};
                goto nextS;
              }
            }
    }
  nextS:;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Generic mixing (multiplication by a constant generic matrix).

enum class MixShape { Full, LowerTriangular };

struct MixResult {
  SeriesMatrix mixed;
  SeriesMatrix mixer;
  std::uint64_t seed = 0;
  int draws = 0;
};

constexpr int kGenericMixRetryBound = 8;

namespace detail {

inline SeriesMatrix drawMixer(int n, MixShape shape, std::mt19937_64& gen) {
  SeriesMatrix c(n, n, MatrixMode::Real);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (shape == MixShape::LowerTriangular && j > i) continue;
      // seeded integers in [1, 2^16]; raw mt19937_64 output keeps the
      // sequence platform-independent
      std::uint64_t v = gen() % 65536 + 1;
      c.at(i, j) = PuiseuxPoly::constant(Coefficient(Rational(v)));
    }
  return c;
}

}  // namespace detail

// B~ = C B for a seeded constant C.  The genericity conclusion is verified
// exactly rather than assumed: in the full shape nu(B~(T,S)) must equal
// max_T' nu(B(T',S)) for every pair, and in the lower-triangular shape (top
// heavy B) it must equal nu(B([k],S)).  Failed draws are retried up to the
// bound, then reported with the failing pair.
inline MixResult genericMix(const SeriesMatrix& b, MixShape shape,
                            std::uint64_t seed = 20240521) {
  if (!b.isSquare()) throw InputError("genericMix: square matrix required");
  const int n = b.rows;
  const Mask top = Mask{1} << n;
  if (shape == MixShape::LowerTriangular && !isTopHeavy(b))
    throw InputError("genericMix: lower-triangular shape requires a top heavy matrix");

  // targets per column set
  std::map<Mask, TropValue> target;
  for (Mask s = 0; s < top; ++s) {
    if (shape == MixShape::Full) {
      TropValue best = TropValue::bottom();
      for (Mask t = 0; t < top; ++t) {
        if (subsetSize(t) != subsetSize(s)) continue;
        PuiseuxPoly d = minorDet(b, t, s);
        if (!d.isZero()) best = TropValue::max(best, TropValue(nu(d)));
      }
      target[s] = best;
    } else {
      PuiseuxPoly d = minorDet(b, (Mask{1} << subsetSize(s)) - 1, s);
      target[s] = d.isZero() ? TropValue::bottom() : TropValue(nu(d));
    }
  }

  std::mt19937_64 gen(seed);
  std::string lastFailure;
  for (int attempt = 1; attempt <= kGenericMixRetryBound; ++attempt) {
    SeriesMatrix c = detail::drawMixer(n, shape, gen);
    if (det(c).isZero()) {
      lastFailure = "singular mixer";
      continue;
    }
    SeriesMatrix mixed = matmul(c, b);
    bool ok = true;
    for (Mask s = 0; s < top && ok; ++s) {
      for (Mask t = 0; t < top; ++t) {
        if (subsetSize(t) != subsetSize(s)) continue;
        PuiseuxPoly d = minorDet(mixed, t, s);
        TropValue got = d.isZero() ? TropValue::bottom() : TropValue(nu(d));
        if (got != target[s]) {
          ok = false;
          lastFailure = detail::pairWitness(t, s, n);
          break;
        }
      }
    }
    if (ok) return {std::move(mixed), std::move(c), seed, attempt};
  }
  throw InternalError("genericity not achieved after " +
                      std::to_string(kGenericMixRetryBound) +
                      " draws; last failure at " + lastFailure);
}

// ---------------------------------------------------------------------------
// Flag point -> positive definite matrix realization pipeline.

struct RealizationCertificate {
  SetFunction inputFlag;
  SeriesMatrix scaledB;
  SeriesMatrix mixer;
  SeriesMatrix mixedB;
  SeriesMatrix gramA;
  SetFunction achievedMinors;
  std::uint64_t seed = 0;
  bool halved = false;
  std::vector<std::pair<std::string, bool>> assertions;
};

// Realizes w = nu(B([k],.)) - lambda_k as the tropicalized principal minors
// of a positive definite matrix: rescale rows so the flag valuation equals
// w, mix by a generic lower-triangular constant matrix, take the Gram
// matrix.  The result has nu(A_S) = 2 w(S); the optional t -> t^(1/2)
// substitution turns that into w(S) on the nose.
inline RealizationCertificate realizeFlagPoint(const SetFunction& w,
                                               const SeriesMatrix& b,
                                               const ScalingVector& lambdas,
                                               bool halveExps = false,
                                               std::uint64_t seed = 20240521) {
  if (!b.isSquare() || b.rows != w.n)
    throw InputError("realizeFlagPoint: matrix size must match w");
  if (static_cast<int>(lambdas.size()) != w.n + 1)
    throw InputError("realizeFlagPoint: lambdas must have length n+1");
  if (lambdas[0] != 0)
    throw InputError("realizeFlagPoint: lambda_0 must be 0");
  requireFinite(w, "realizeFlagPoint");

  RealizationCertificate cert;
  cert.inputFlag = w;
  cert.seed = seed;
  cert.halved = halveExps;

  SetFunction fv = flagValuation(b);
  for (Mask s = 0; s < (Mask{1} << w.n); ++s)
    if (w.at(s).value() != fv.at(s).value() - lambdas[subsetSize(s)])
      throw InputError("realizeFlagPoint: w(S) != nu(B([k],S)) - lambda_k at S = {" +
                       subsetKey(s, w.n) + "}");
  if (!isSubmodular(w))
    throw InputError("realizeFlagPoint: w is not submodular");
  cert.assertions.emplace_back("input is a submodular flag valuation", true);

  cert.scaledB = b;
  for (int k = 1; k <= w.n; ++k) {
    Rational e = lambdas[k] - lambdas[k - 1];
    if (e != 0)
      scaleRow(cert.scaledB, k - 1,
               PuiseuxPoly::t(e));
  }
  if (!(flagValuation(cert.scaledB) == w))
    throw InternalError("row rescaling failed to shift the flag valuation");
  cert.assertions.emplace_back("scaled flag valuation equals w", true);

  if (!isTopHeavy(cert.scaledB))
    throw InputError("input not submodular-consistent");
  cert.assertions.emplace_back("scaled matrix is top heavy", true);

  MixResult mix = genericMix(cert.scaledB, MixShape::LowerTriangular, seed);
  cert.mixer = std::move(mix.mixer);
  cert.mixedB = std::move(mix.mixed);
  cert.assertions.emplace_back("generic mix verified column-only valuations", true);

  cert.gramA = gram(cert.mixedB);
  if (!isPositiveDefinite(cert.gramA))
    throw InternalError("Gram matrix is not positive definite");
  cert.assertions.emplace_back("Gram matrix is positive definite", true);

  cert.achievedMinors = tropPrincipalMinors(cert.gramA);
  for (Mask s = 0; s < (Mask{1} << w.n); ++s)
    if (cert.achievedMinors.at(s).value() != 2 * w.at(s).value())
      throw InternalError("achieved minors do not equal 2w");
  cert.assertions.emplace_back("achieved minors equal 2w", true);

  if (halveExps) {
    cert.gramA = halveExponents(cert.gramA);
    cert.achievedMinors = tropPrincipalMinors(cert.gramA);
    if (!(cert.achievedMinors == w))
      throw InternalError("halved minors do not equal w");
    cert.assertions.emplace_back("halved minors equal w", true);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Membership in the tropicalized principal-minor cone.

enum class Membership { Inside, Outside, WitnessNeeded };

struct MembershipVerdict {
  Membership status = Membership::WitnessNeeded;
  std::string violation;                // set for Outside
  std::optional<SeriesMatrix> witness;  // set when found for n >= 6
};

// Necessary conditions: submodularity plus every flag Pluecker/incidence
// relation.  They are also sufficient for n <= 5.  For n >= 6 the flag
// Dressian may strictly contain the tropical flag variety, so a bounded
// constructive witness search runs first and the honest answer otherwise is
// WitnessNeeded.
inline MembershipVerdict membershipCheck(const SetFunction& w,
                                         std::uint64_t seed = 20240521) {
  requireFinite(w, "membershipCheck");
  if (w.at(0).value() != 0)
    throw InputError("membershipCheck: normalize w so that w(empty) = 0");
  MembershipVerdict verdict;
  if (auto bad = firstFlagDressianViolation(w)) {
    bool incidence = subsetSize(bad->S) < subsetSize(bad->T) - 2;
    verdict.status = Membership::Outside;
    verdict.violation = std::string("flag relation (") +
                        (incidence ? "incidence" : "Pluecker") +
                        ") fails at S={" + subsetKey(bad->S, w.n) + "}, T={" +
                        subsetKey(bad->T, w.n) + "}";
    return verdict;
  }
  if (auto bad = firstSubmodularViolation(w)) {
    verdict.status = Membership::Outside;
    verdict.violation =
        "submodularity fails at S={" + subsetKey(bad->S, w.n) + "}, i=" +
        std::to_string(bad->i) + ", j=" + std::to_string(bad->j);
    return verdict;
  }
  if (w.n <= 5) {
    verdict.status = Membership::Inside;
    return verdict;
  }
  // bounded template search: monomial staircase exponents, seeded constants
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < kGenericMixRetryBound; ++attempt) {
    SeriesMatrix b(w.n, w.n, MatrixMode::Real);
    for (int i = 1; i <= w.n; ++i) {
      Mask prefix = (Mask{1} << (i - 1)) - 1;
      for (int j = i; j <= w.n; ++j) {
        Rational gamma = w.at(prefix | (Mask{1} << (j - 1))).value() -
                         w.at(prefix).value();
        std::uint64_t c = gen() % 65536 + 1;
        b.at(i - 1, j - 1) =
            PuiseuxPoly::monomial(-gamma, Coefficient(Rational(c)));
      }
    }
    try {
      if (flagValuation(b) == w) {
        verdict.status = Membership::Inside;
        verdict.witness = std::move(b);
        return verdict;
      }
    } catch (const InputError&) {
      // vanishing top minor in this draw; try again
    }
  }
  verdict.status = Membership::WitnessNeeded;
  return verdict;
}

// ---------------------------------------------------------------------------

inline nlohmann::ordered_json certificateToJson(const RealizationCertificate& c) {
  nlohmann::ordered_json j;
  j["input"] = setFunctionToJson(c.inputFlag);
  j["scaledB"] = printMatrixFile(c.scaledB);
  j["mixer"] = printMatrixFile(c.mixer);
  j["mixedB"] = printMatrixFile(c.mixedB);
  j["gramA"] = printMatrixFile(c.gramA);
  j["achievedMinors"] = setFunctionToJson(c.achievedMinors);
  j["seed"] = c.seed;
  j["halveExponents"] = c.halved;
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& [name, pass] : c.assertions)
    j["assertions"].push_back({{"stage", name}, {"pass", pass}});
  return j;
}

}  // namespace tropmin
