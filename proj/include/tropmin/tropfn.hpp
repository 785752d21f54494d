#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "tropmin/set_function.hpp"

namespace tropmin {

inline std::vector<Mask> masksOfSize(int m, int k) {
  std::vector<Mask> out;
  for (Mask s = 0; s < (Mask{1} << m); ++s)
    if (subsetSize(s) == k) out.push_back(s);
  return out;
}

// A total map on the k-subsets of [m]; entries for other masks are unused.
// Houses Dressian points: multisymmetric lifts and homogenized layers.
struct LayerMap {
  int m = 0;
  int k = 0;
  std::vector<TropValue> vals;  // indexed by mask over [m]

  LayerMap() = default;
  LayerMap(int m_, int k_) : m(m_), k(k_), vals(std::size_t{1} << m_) {}
  const TropValue& at(Mask s) const { return vals.at(s); }
  TropValue& at(Mask s) { return vals.at(s); }
};

// A violated local submodularity triple: S together with i != j outside S.
struct SubmodularViolation {
  Mask S;
  int i, j;
};

inline std::optional<SubmodularViolation> firstSubmodularViolation(
    const SetFunction& f, bool strict = false) {
  requireFinite(f, "submodularity check");
  for (Mask s = 0; s < (Mask{1} << f.n); ++s) {
    for (int i = 1; i <= f.n; ++i) {
      if (s & (Mask{1} << (i - 1))) continue;
      for (int j = i + 1; j <= f.n; ++j) {
        if (s & (Mask{1} << (j - 1))) continue;
        Mask si = s | (Mask{1} << (i - 1));
        Mask sj = s | (Mask{1} << (j - 1));
        const Rational lhs = f.at(s).value() + f.at(si | sj).value();
        const Rational rhs = f.at(si).value() + f.at(sj).value();
        if (strict ? !(lhs < rhs) : !(lhs <= rhs))
          return SubmodularViolation{s, i, j};
      }
    }
  }
  return std::nullopt;
}

// Local form F(S) + F(Sij) <= F(Si) + F(Sj); implies global submodularity.
inline bool isSubmodular(const SetFunction& f) {
  return !firstSubmodularViolation(f, false).has_value();
}

inline bool isStrictlySubmodular(const SetFunction& f) {
  return !firstSubmodularViolation(f, true).has_value();
}

struct ExchangeViolation {
  Mask S, T;
  int i;
};

// M-natural concavity via the exchange disjunction: for all S, T and
// i in S \ T, either F(S)+F(T) <= F(S\i)+F(Ti), or some j in T \ S has
// F(S)+F(T) <= F(Sj\i)+F(Ti\j).
inline std::optional<ExchangeViolation> firstExchangeViolation(
    const SetFunction& f) {
  requireFinite(f, "M-natural concavity check");
  const Mask top = Mask{1} << f.n;
  for (Mask s = 0; s < top; ++s) {
    for (Mask t = 0; t < top; ++t) {
      Mask sOnly = s & ~t;
      for (int i = 1; i <= f.n; ++i) {
        Mask ibit = Mask{1} << (i - 1);
        if (!(sOnly & ibit)) continue;
        const Rational lhs = f.at(s).value() + f.at(t).value();
        if (lhs <= f.at(s & ~ibit).value() + f.at(t | ibit).value()) continue;
        bool ok = false;
        Mask tOnly = t & ~s;
        for (int j = 1; j <= f.n && !ok; ++j) {
          Mask jbit = Mask{1} << (j - 1);
          if (!(tOnly & jbit)) continue;
          if (lhs <= f.at((s | jbit) & ~ibit).value() +
                         f.at((t | ibit) & ~jbit).value())
            ok = true;
        }
        if (!ok) return ExchangeViolation{s, t, i};
      }
    }
  }
  return std::nullopt;
}

inline bool isMNaturalConcave(const SetFunction& f) {
  return !firstExchangeViolation(f).has_value();
}

// hatF(T) = F(T cap [n]) on the n-subsets of [2n].  The doubled ground set
// caps n well below the general predicate bound.
inline LayerMap multisymmetricLift(const SetFunction& f) {
  requireFinite(f, "multisymmetric lift");
  if (f.n > 8)
    throw InputError("multisymmetricLift: enumeration bound exceeded (n <= 8)");
  LayerMap lift(2 * f.n, f.n);
  Mask low = f.fullMask();
  for (Mask t : masksOfSize(2 * f.n, f.n)) lift.at(t) = f.at(t & low);
  return lift;
}

// Homogenization of layers k and k+1 of F into a map on the (k+1)-subsets
// of [n+1]: the new element n+1 marks the sets coming from layer k.
inline LayerMap homogenizeLayer(const SetFunction& f, int k) {
  requireFinite(f, "layer homogenization");
  if (k < 0 || k > f.n - 1) throw InputError("homogenizeLayer: k out of range");
  LayerMap out(f.n + 1, k + 1);
  Mask newBit = Mask{1} << f.n;
  for (Mask s : masksOfSize(f.n + 1, k + 1))
    out.at(s) = (s & newBit) ? f.at(s & ~newBit) : f.at(s);
  return out;
}

struct DressianViolation {
  Mask S, T;  // |S| = k-1, |T| = k+1
};

// Tropical Pluecker relations: for every (k-1)-subset S and (k+1)-subset T
// of [m], the max over i in T\S of p(Si) + p(T\i) is attained at least
// twice.  A relation whose terms are all -inf holds vacuously; a unique
// finite maximum fails it.
inline std::optional<DressianViolation> firstDressianViolation(
    const LayerMap& p) {
  const auto smalls = masksOfSize(p.m, p.k - 1);
  const auto bigs = masksOfSize(p.m, p.k + 1);
  for (Mask s : smalls) {
    for (Mask t : bigs) {
      Mask cand = t & ~s;
      TropValue best = TropValue::bottom();
      int hits = 0;
      for (int i = 1; i <= p.m; ++i) {
        Mask ibit = Mask{1} << (i - 1);
        if (!(cand & ibit)) continue;
        TropValue term = p.at(s | ibit) + p.at(t & ~ibit);
        if (!term.isFinite()) continue;
        if (best < term) {
          best = term;
          hits = 1;
        } else if (term == best) {
          ++hits;
        }
      }
      if (best.isFinite() && hits < 2) return DressianViolation{s, t};
    }
  }
  return std::nullopt;
}

inline bool isDressian(const LayerMap& p) {
  return !firstDressianViolation(p).has_value();
}

// All Pluecker (|S| = |T|-2) and incidence (|S| < |T|-2) relations on 2^[n].
inline std::optional<DressianViolation> firstFlagDressianViolation(
    const SetFunction& f) {
  requireFinite(f, "flag Dressian check");
  const Mask top = Mask{1} << f.n;
  for (Mask s = 0; s < top; ++s) {
    for (Mask t = 0; t < top; ++t) {
      if (subsetSize(s) > subsetSize(t) - 2) continue;
      Mask cand = t & ~s;
      Rational best;
      int hits = 0;
      for (int i = 1; i <= f.n; ++i) {
        Mask ibit = Mask{1} << (i - 1);
        if (!(cand & ibit)) continue;
        Rational term = f.at(s | ibit).value() + f.at(t & ~ibit).value();
        if (hits == 0 || best < term) {
          best = term;
          hits = 1;
        } else if (term == best) {
          ++hits;
        }
      }
      if (hits == 1) return DressianViolation{s, t};
    }
  }
  return std::nullopt;
}

inline bool isFlagDressian(const SetFunction& f) {
  return !firstFlagDressianViolation(f).has_value();
}

// (lambda . w)(S) = lambda_{|S|} + w(S).  A lineality direction of the
// tropical flag variety: flag-Dressian and Dressian verdicts are invariant.
inline SetFunction tropicalScale(const SetFunction& f, const ScalingVector& lam) {
  if (static_cast<int>(lam.size()) != f.n + 1)
    throw InputError("scaling vector must have length n+1");
  SetFunction out(f.n);
  for (Mask s = 0; s < (Mask{1} << f.n); ++s) {
    const TropValue& v = f.at(s);
    out.at(s) = v.isFinite() ? TropValue(lam[subsetSize(s)] + v.value())
                             : TropValue::bottom();
  }
  return out;
}

// Chooses lambda with tropicalScale(F, lambda) strictly submodular.  For
// submodular F the entries obey |lambda_k| < 3^(k-1) * eps, so the
// perturbation can be made arbitrarily small; otherwise a coarse bound
// derived from the worst local slack is used.  Deterministic: midpoints of
// the admissible open intervals, and (bound - 1) in the general branch.
inline ScalingVector strictifyingScaling(const SetFunction& f,
                                         const Rational& eps) {
  requireFinite(f, "strictifying scaling");
  if (eps <= 0) throw InputError("strictifyingScaling: eps must be positive");
  const int n = f.n;
  ScalingVector lam(n + 1, Rational(0));
  if (isSubmodular(f)) {
    if (n >= 2) lam[2] = -eps;
    for (int k = 3; k <= n; ++k) {
      Rational lo = 3 * lam[k - 1];
      Rational hi = std::min(Rational(0), Rational(2 * lam[k - 1] - lam[k - 2]));
      lam[k] = (lo + hi) / 2;
    }
  } else {
    for (int k = 2; k <= n; ++k) {
      bool first = true;
      Rational bound;
      for (Mask s : masksOfSize(n, k)) {
        auto elems = maskElements(s);
        for (std::size_t a = 0; a < elems.size(); ++a) {
          for (std::size_t b = a + 1; b < elems.size(); ++b) {
            Mask ib = Mask{1} << (elems[a] - 1);
            Mask jb = Mask{1} << (elems[b] - 1);
            Rational expr = f.at(s & ~ib).value() + f.at(s & ~jb).value() +
                            2 * lam[k - 1] - f.at(s & ~(ib | jb)).value() -
                            f.at(s).value() - lam[k - 2];
            if (first || expr < bound) {
              bound = expr;
              first = false;
            }
          }
        }
      }
      lam[k] = first ? Rational(0) : Rational(bound - 1);
    }
  }
  if (!isStrictlySubmodular(tropicalScale(f, lam)))
    throw InternalError("strictifying scaling did not strictify");
  return lam;
}

}  // namespace tropmin
