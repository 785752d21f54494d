#pragma once

#include <bitset>
#include <optional>
#include <set>
#include <vector>

#include <json.hpp>

#include "tropmin/linear.hpp"
#include "tropmin/tropfn.hpp"

namespace tropmin {

// Regular subdivision of the 0/1 cube induced by lifting vertex e_S to
// height F(S) and projecting the maximal upper-hull faces back down.  Each
// cell lists every cube vertex it contains (sorted); cells are ordered
// lexicographically.  supports[i] is the affine functional (a, b) with
// a.e_S + b = F(S) exactly on cell i and > F elsewhere.
struct CubeSubdivision {
  int n = 0;
  std::vector<std::vector<Mask>> cells;
  std::vector<std::pair<RatVec, Rational>> supports;
};

namespace detail {

constexpr std::size_t kMaxDDRows = 96;

struct DDRay {
  RatVec x;
  std::bitset<kMaxDDRows> zero;
};

inline RatVec normalizePrimitive(RatVec v) {
  BigInt l = 1;
  for (const auto& r : v) l = boost::multiprecision::lcm(l, denominator(r));
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& r : v) {
    BigInt n = numerator(r) * (l / denominator(r));
    ints.push_back(n);
    g = boost::multiprecision::gcd(g, n);
  }
  if (g == 0) g = 1;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g);
  return v;
}

// Extreme rays of the pointed cone {x : row . x >= 0 for all rows} by the
// double description method.  The first dim rows must form a nonsingular
// square system; adjacency uses the combinatorial zero-set test.
inline std::vector<DDRay> ddExtremeRays(const RatMat& rows) {
  const std::size_t dim = rows.empty() ? 0 : rows[0].size();
  if (rows.size() < dim) throw InternalError("dd: too few constraints");
  if (rows.size() > kMaxDDRows) throw InternalError("dd: too many constraints");
  RatMat init(rows.begin(), rows.begin() + dim);
  auto inv = invertSquare(init);
  if (!inv) throw InternalError("dd: initial constraint block is singular");

  std::vector<DDRay> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    DDRay r;
    r.x.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) r.x[i] = (*inv)[i][k];
    r.x = normalizePrimitive(std::move(r.x));
    for (std::size_t j = 0; j < dim; ++j)
      if (j != k) r.zero.set(j);
    rays.push_back(std::move(r));
  }

  auto dot = [&](const RatVec& row, const RatVec& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * x[i];
    return s;
  };

  for (std::size_t ci = dim; ci < rows.size(); ++ci) {
    const RatVec& row = rows[ci];
    std::vector<Rational> vals(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) vals[i] = dot(row, rays[i].x);

    std::vector<std::size_t> plus, minus;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (vals[i] > 0)
        plus.push_back(i);
      else if (vals[i] < 0)
        minus.push_back(i);
      else
        rays[i].zero.set(ci);
    }
    if (minus.empty()) continue;

    std::vector<DDRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (vals[i] >= 0) next.push_back(rays[i]);

    for (std::size_t p : plus) {
      for (std::size_t q : minus) {
        std::bitset<kMaxDDRows> common = rays[p].zero & rays[q].zero;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if ((common & ~rays[r].zero).none()) adjacent = false;
        }
        if (!adjacent) continue;
        DDRay nr;
        nr.x.resize(dim);
        for (std::size_t i = 0; i < dim; ++i)
          nr.x[i] = vals[p] * rays[q].x[i] - vals[q] * rays[p].x[i];
        nr.x = normalizePrimitive(std::move(nr.x));
        nr.zero = common;
        nr.zero.set(ci);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }
  return rays;
}

}  // namespace detail

// The cells of the upper-hull regular subdivision are in bijection with the
// vertices of the dual polyhedron {(a,b) : a.e_S + b >= F(S) for all S},
// each vertex's tight set being the cell's vertex list.  Enumerated exactly
// over the rationals; n <= 6 keeps the constraint count at 2^6 + 1.
inline CubeSubdivision upperHullSubdivision(const SetFunction& f) {
  requireFinite(f, "upper hull subdivision");
  if (f.n > 6) throw InputError("enumeration bound exceeded (n <= 6)");
  const int n = f.n;
  const std::size_t dim = n + 2;  // (a_1..a_n, b, s) homogenized

  RatMat rows;
  auto constraintRow = [&](Mask s) {
    RatVec row(dim, Rational(0));
    for (int i = 0; i < n; ++i)
      if (s & (Mask{1} << i)) row[i] = 1;
    row[n] = 1;
    row[n + 1] = -f.at(s).value();
    return row;
  };
  // initial nonsingular block: empty set, singletons, then s >= 0
  rows.push_back(constraintRow(0));
  for (int i = 0; i < n; ++i) rows.push_back(constraintRow(Mask{1} << i));
  {
    RatVec sRow(dim, Rational(0));
    sRow[n + 1] = 1;
    rows.push_back(sRow);
  }
  for (Mask s = 0; s < (Mask{1} << n); ++s)
    if (subsetSize(s) >= 2) rows.push_back(constraintRow(s));

  auto rays = detail::ddExtremeRays(rows);

  CubeSubdivision sub;
  sub.n = n;
  std::vector<std::pair<std::vector<Mask>, std::pair<RatVec, Rational>>> cells;
  for (const auto& ray : rays) {
    const Rational& s = ray.x[n + 1];
    if (s <= 0) continue;  // recession directions of the dual polyhedron
    RatVec a(n);
    for (int i = 0; i < n; ++i) a[i] = ray.x[i] / s;
    Rational b = ray.x[n] / s;
    std::vector<Mask> cell;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      Rational lift = b;
      for (int i = 0; i < n; ++i)
        if (m & (Mask{1} << i)) lift += a[i];
      if (lift == f.at(m).value()) cell.push_back(m);
    }
    cells.push_back({std::move(cell), {std::move(a), std::move(b)}});
  }
  std::sort(cells.begin(), cells.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [cell, support] : cells) {
    sub.cells.push_back(std::move(cell));
    sub.supports.push_back(std::move(support));
  }
  return sub;
}

// ---------------------------------------------------------------------------

struct SubdivisionEdge {
  Mask u, v;             // u < v
  std::vector<int> dir;  // e_v - e_u, entries in {-1, 0, 1}
};

struct EdgeReport {
  std::vector<SubdivisionEdge> edges;
  // true when every direction is +-e_i or +-(e_i - e_j)
  bool allUnitOrDifference = true;
};

inline bool isUnitOrDifferenceDirection(const std::vector<int>& d) {
  int pos = 0, neg = 0;
  for (int x : d) {
    if (x == 1) ++pos;
    else if (x == -1) ++neg;
    else if (x != 0) return false;
  }
  return (pos + neg == 1) || (pos == 1 && neg == 1);
}

// [u,v] is a 1-face of conv(C) iff some affine functional vanishes on u and
// v and is strictly negative on the rest of C.  Two combinatorial shortcuts
// settle most pairs before the exact LP:
//  - a cube edge between two cell members is always a face: any convex
//    representation of its midpoint must match the 0/1 coordinates, so only
//    u and v can participate;
//  - if some other pair w1, w2 of the cell has w1 + w2 = u + v, the shared
//    midpoint rules the edge out for the same reason.
inline bool isEdgeOfCell(const std::vector<Mask>& cell, Mask u, Mask v, int n) {
  if (subsetSize(u ^ v) == 1) return true;
  for (Mask w1 : cell) {
    if (w1 == u || w1 == v) continue;
    Mask w2 = (u | v) & ~(w1 & ~(u & v));  // candidate with w1 + w2 = u + v
    if ((w1 & ~(u | v)) || (w1 & u & v) != (u & v)) continue;
    if (std::binary_search(cell.begin(), cell.end(), w2)) return false;
  }
  const std::size_t dim = n + 1;  // (a, beta)
  std::vector<LinRow> rowsLP;
  auto mkRow = [&](Mask w) {
    RatVec a(dim, Rational(0));
    for (int i = 0; i < n; ++i)
      if (w & (Mask{1} << i)) a[i] = 1;
    a[n] = 1;
    return a;
  };
  rowsLP.push_back({mkRow(u), Rational(0), LinRow::Eq});
  rowsLP.push_back({mkRow(v), Rational(0), LinRow::Eq});
  for (Mask w : cell) {
    if (w == u || w == v) continue;
    rowsLP.push_back({mkRow(w), Rational(-1), LinRow::Le});
  }
  return lpFeasible(rowsLP, dim);
}

// All 1-faces of all cells, tagged with their direction vectors.
inline EdgeReport subdivisionEdges(const CubeSubdivision& sub) {
  EdgeReport report;
  std::set<std::pair<Mask, Mask>> seen;
  std::set<std::pair<Mask, Mask>> rejected;
  for (const auto& cell : sub.cells) {
    for (std::size_t i = 0; i < cell.size(); ++i) {
      for (std::size_t j = i + 1; j < cell.size(); ++j) {
        std::pair<Mask, Mask> key{cell[i], cell[j]};
        if (seen.count(key) || rejected.count(key)) continue;
        if (isEdgeOfCell(cell, cell[i], cell[j], sub.n)) {
          seen.insert(key);
        } else {
          // a pair that is not a face of one containing cell is not a face
          // of the complex at all
          rejected.insert(key);
        }
      }
    }
  }
  for (const auto& [u, v] : seen) {
    SubdivisionEdge e;
    e.u = u;
    e.v = v;
    e.dir.resize(sub.n);
    for (int i = 0; i < sub.n; ++i) {
      int bu = (u >> i) & 1, bv = (v >> i) & 1;
      e.dir[i] = bv - bu;
    }
    if (!isUnitOrDifferenceDirection(e.dir)) report.allUnitOrDifference = false;
    report.edges.push_back(std::move(e));
  }
  return report;
}

// True iff every cell lies in a slab {k <= sum x_i <= k+1}.
inline bool isLayered(const CubeSubdivision& sub) {
  for (const auto& cell : sub.cells) {
    int lo = sub.n + 1, hi = -1;
    for (Mask m : cell) {
      lo = std::min(lo, subsetSize(m));
      hi = std::max(hi, subsetSize(m));
    }
    if (hi - lo > 1) return false;
  }
  return true;
}

// Every cell of `fine` contained in some cell of `coarse`.  Cell vertex
// lists carry every cube vertex of the cell, so polytope containment is
// exactly vertex-set containment.
inline bool refines(const CubeSubdivision& fine, const CubeSubdivision& coarse) {
  if (fine.n != coarse.n) throw InputError("refines: dimension mismatch");
  for (const auto& cf : fine.cells) {
    bool inside = false;
    for (const auto& cc : coarse.cells) {
      if (std::includes(cc.begin(), cc.end(), cf.begin(), cf.end())) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

// Structural validity: supports certify their cells, every cube vertex is
// covered, and any two cells meet in the common exposed face.  Used by the
// tests; throws InternalError with a description on failure.
inline void validateSubdivision(const CubeSubdivision& sub, const SetFunction& f) {
  std::vector<bool> covered(std::size_t{1} << sub.n, false);
  auto lift = [&](const RatVec& a, const Rational& b, Mask m) {
    Rational v = b;
    for (int i = 0; i < sub.n; ++i)
      if (m & (Mask{1} << i)) v += a[i];
    return v;
  };
  for (std::size_t ci = 0; ci < sub.cells.size(); ++ci) {
    const auto& [a, b] = sub.supports[ci];
    std::size_t hit = 0;
    for (Mask m = 0; m < (Mask{1} << sub.n); ++m) {
      Rational v = lift(a, b, m);
      if (v < f.at(m).value())
        throw InternalError("support functional dips below a lifted point");
      bool tight = v == f.at(m).value();
      bool member = std::binary_search(sub.cells[ci].begin(),
                                       sub.cells[ci].end(), m);
      if (tight != member)
        throw InternalError("cell vertex list disagrees with contact set");
      if (tight) {
        covered[m] = true;
        ++hit;
      }
    }
    if (hit != sub.cells[ci].size())
      throw InternalError("cell size mismatch");
  }
  for (Mask m = 0; m < (Mask{1} << sub.n); ++m)
    if (!covered[m]) throw InternalError("cube vertex not covered by any cell");
  for (std::size_t i = 0; i < sub.cells.size(); ++i) {
    for (std::size_t j = i + 1; j < sub.cells.size(); ++j) {
      // C_i cap C_j is the face of C_i exposed by the difference of the two
      // support functionals; its cube vertices are exactly the common ones.
      const auto& [ai, bi] = sub.supports[i];
      const auto& [aj, bj] = sub.supports[j];
      for (Mask m : sub.cells[i]) {
        bool common = std::binary_search(sub.cells[j].begin(),
                                         sub.cells[j].end(), m);
        bool exposed = lift(ai, bi, m) == lift(aj, bj, m);
        if (common != exposed)
          throw InternalError("cells do not intersect in a common face");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Matroid cells (layer decomposition after a strictifying perturbation).

struct ExchangeFailure {
  Mask b1, b2;
  int x;  // element of b1 \ b2 with no exchange partner
};

// Basis-exchange axiom on a collection of same-size subsets of [m].
inline bool basisExchangeHolds(const std::vector<Mask>& bases,
                               ExchangeFailure* failure = nullptr) {
  for (Mask b1 : bases) {
    for (Mask b2 : bases) {
      Mask only1 = b1 & ~b2;
      for (int x = 0; x < 32 && (only1 >> x); ++x) {
        if (!(only1 & (Mask{1} << x))) continue;
        bool found = false;
        Mask only2 = b2 & ~b1;
        for (int y = 0; y < 32 && (only2 >> y) && !found; ++y) {
          if (!(only2 & (Mask{1} << y))) continue;
          Mask candidate = (b1 & ~(Mask{1} << x)) | (Mask{1} << y);
          for (Mask b : bases)
            if (b == candidate) {
              found = true;
              break;
            }
        }
        if (!found) {
          if (failure) *failure = {b1, b2, x + 1};
          return false;
        }
      }
    }
  }
  return true;
}

struct MatroidCellReport {
  int layer = 0;                  // cell lies in {layer <= sum x <= layer+1}
  std::vector<Mask> bases;        // homogenized: (k+1)-subsets of [n+1]
  bool isMatroid = false;
  std::optional<ExchangeFailure> exchangeWitnessFailure;
};

struct MatroidExtraction {
  ScalingVector lambda;
  Rational eps;
  CubeSubdivision perturbed;
  std::vector<MatroidCellReport> reports;
};

namespace detail {

inline Rational defaultMatroidEps(const SetFunction& f) {
  // 1 / (1 + 3^n * maxSlackDenominator * range(F)); any sufficiently small
  // eps works, and the refinement guard below re-checks the choice.
  BigInt maxDen = 1;
  for (Mask s = 0; s < (Mask{1} << f.n); ++s) {
    for (int i = 1; i <= f.n; ++i) {
      if (s & (Mask{1} << (i - 1))) continue;
      for (int j = i + 1; j <= f.n; ++j) {
        if (s & (Mask{1} << (j - 1))) continue;
        Mask si = s | (Mask{1} << (i - 1));
        Mask sj = s | (Mask{1} << (j - 1));
        Rational slack = f.at(si).value() + f.at(sj).value() -
                         f.at(s).value() - f.at(si | sj).value();
        maxDen = std::max(maxDen, BigInt(denominator(slack)));
      }
    }
  }
  Rational range = 0;
  for (Mask s = 0; s < (Mask{1} << f.n); ++s)
    for (Mask t = 0; t < (Mask{1} << f.n); ++t)
      range = std::max(range, Rational(f.at(s).value() - f.at(t).value()));
  BigInt pow3 = 1;
  for (int i = 0; i < f.n; ++i) pow3 *= 3;
  return Rational(1) / (1 + Rational(pow3) * Rational(maxDen) * range);
}

}  // namespace detail

// Perturbs F by a strictifying scaling, recomputes the subdivision (now
// layered by strict submodularity plus M-natural concavity), verifies it
// refines the original, and checks the basis-exchange axiom on each cell
// after homogenizing the lower layer with the extra element n+1.
inline MatroidExtraction extractMatroidCells(
    const SetFunction& f, std::optional<Rational> epsOpt = std::nullopt) {
  requireFinite(f, "extractMatroidCells");
  if (!isMNaturalConcave(f))
    throw InputError("extractMatroidCells: M-natural-concave input required");
  if (epsOpt && *epsOpt <= 0)
    throw InputError("extractMatroidCells: eps must be positive");

  CubeSubdivision original = upperHullSubdivision(f);

  Rational eps = epsOpt ? *epsOpt : detail::defaultMatroidEps(f);
  const int maxHalvings = epsOpt ? 0 : 40;
  MatroidExtraction out;
  for (int attempt = 0;; ++attempt) {
    out.lambda = strictifyingScaling(f, eps);
    SetFunction g = tropicalScale(f, out.lambda);
    out.perturbed = upperHullSubdivision(g);
    if (!isLayered(out.perturbed))
      throw InternalError("perturbed subdivision is not layered");
    if (refines(out.perturbed, original)) break;
    if (attempt >= maxHalvings)
      throw InputError(
          "perturbed subdivision does not refine the original; eps too large");
    eps /= 2;
  }
  out.eps = eps;

  for (const auto& cell : out.perturbed.cells) {
    MatroidCellReport report;
    int k = f.n + 1;
    for (Mask m : cell) k = std::min(k, subsetSize(m));
    report.layer = k;
    Mask newBit = Mask{1} << f.n;
    for (Mask m : cell)
      report.bases.push_back(subsetSize(m) == k ? (m | newBit) : m);
    std::sort(report.bases.begin(), report.bases.end());
    ExchangeFailure failure;
    report.isMatroid = basisExchangeHolds(report.bases, &failure);
    if (!report.isMatroid) report.exchangeWitnessFailure = failure;
    out.reports.push_back(std::move(report));
  }
  return out;
}

// ---------------------------------------------------------------------------

inline nlohmann::ordered_json subdivisionToJson(const CubeSubdivision& sub) {
  nlohmann::ordered_json j;
  j["n"] = sub.n;
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& cell : sub.cells) j["cells"].push_back(cell);
  return j;
}

inline nlohmann::ordered_json edgeReportToJson(const EdgeReport& r) {
  nlohmann::ordered_json j;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : r.edges) {
    nlohmann::ordered_json je;
    je["pair"] = {e.u, e.v};
    je["direction"] = e.dir;
    j["edges"].push_back(je);
  }
  j["allDirectionsUnitOrDifference"] = r.allUnitOrDifference;
  return j;
}

inline nlohmann::ordered_json matroidReportsToJson(
    const std::vector<MatroidCellReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["layer"] = r.layer;
    j["bases"] = r.bases;
    j["isMatroid"] = r.isMatroid;
    if (r.exchangeWitnessFailure) {
      j["exchangeWitnessFailure"] = {
          {"b1", r.exchangeWitnessFailure->b1},
          {"b2", r.exchangeWitnessFailure->b2},
          {"x", r.exchangeWitnessFailure->x}};
    }
    arr.push_back(j);
  }
  return arr;
}

}  // namespace tropmin
