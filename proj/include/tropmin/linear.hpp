#pragma once

#include <optional>
#include <vector>

#include "tropmin/rational.hpp"

namespace tropmin {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

// Solves the square system A x = b exactly; nullopt when A is singular.
inline std::optional<RatVec> solveSquare(RatMat a, RatVec b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Inverse of a square rational matrix; nullopt when singular.
inline std::optional<RatMat> invertSquare(RatMat a) {
  const std::size_t n = a.size();
  RatMat inv(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational d = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

// One linear condition on a free variable vector x: a . x (= | <=) b.
struct LinRow {
  RatVec a;
  Rational b;
  enum Sense { Eq, Le } sense = Eq;
};

// Exact feasibility of a system of equalities and <= inequalities over free
// variables: phase-1 simplex with Bland's rule, so it always terminates.
inline bool lpFeasible(const std::vector<LinRow>& rows, std::size_t dim) {
  const std::size_t m = rows.size();
  std::size_t nSlack = 0;
  for (const auto& r : rows)
    if (r.sense == LinRow::Le) ++nSlack;
  // columns: x+ (dim), x- (dim), slacks, artificials
  const std::size_t nCols = 2 * dim + nSlack + m;
  RatMat tab(m, RatVec(nCols + 1, Rational(0)));
  std::size_t slackIdx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = rows[i];
    for (std::size_t j = 0; j < dim; ++j) {
      tab[i][j] = r.a[j];
      tab[i][dim + j] = -r.a[j];
    }
    if (r.sense == LinRow::Le) tab[i][2 * dim + slackIdx++] = 1;
    tab[i][nCols] = r.b;
    if (tab[i][nCols] < 0)
      for (auto& v : tab[i]) v = -v;
    tab[i][2 * dim + nSlack + i] = 1;  // artificial
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = 2 * dim + nSlack + i;

  // Phase-1 objective row for minimizing the artificial sum: the entries of
  // basic (artificial) columns are zero, so increasing a nonbasic column c
  // changes the objective by -obj[c].
  const std::size_t firstArtificial = 2 * dim + nSlack;
  RatVec obj(nCols + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c <= nCols; ++c)
      if (c < firstArtificial || c == nCols) obj[c] += tab[i][c];

  while (true) {
    // Bland's rule: smallest-index improving column.  Artificials never
    // re-enter; dropping them preserves feasibility of the original system.
    std::size_t enter = nCols;
    for (std::size_t c = 0; c < firstArtificial; ++c) {
      if (obj[c] > 0) {
        enter = c;
        break;
      }
    }
    if (enter == nCols) break;
    std::size_t leave = m;
    Rational bestRatio;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      Rational ratio = tab[i][nCols] / tab[i][enter];
      if (leave == m || ratio < bestRatio ||
          (ratio == bestRatio && basis[i] < basis[leave])) {
        leave = i;
        bestRatio = ratio;
      }
    }
    if (leave == m)
      throw InternalError("phase-1 simplex claims unbounded objective");
    Rational piv = tab[leave][enter];
    for (auto& v : tab[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      Rational f = tab[i][enter];
      for (std::size_t c = 0; c <= nCols; ++c) tab[i][c] -= f * tab[leave][c];
    }
    Rational f = obj[enter];
    if (f != 0)
      for (std::size_t c = 0; c <= nCols; ++c) obj[c] -= f * tab[leave][c];
    basis[leave] = enter;
  }
  return obj[nCols] == 0;
}

}  // namespace tropmin
