#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tropmin/series.hpp"
#include "tropmin/set_function.hpp"

namespace tropmin {

enum class MatrixMode { Real, Complex };

// Dense rectangular matrix over the Puiseux-polynomial ring.  Real-mode
// matrices keep every entry real; the mode also selects symmetric versus
// Hermitian semantics for the positive-definiteness test.
struct SeriesMatrix {
  int rows = 0, cols = 0;
  MatrixMode mode = MatrixMode::Real;
  std::vector<PuiseuxPoly> entries;  // row-major

  SeriesMatrix() = default;
  SeriesMatrix(int r, int c, MatrixMode m = MatrixMode::Real)
      : rows(r), cols(c), mode(m), entries(std::size_t(r) * c) {}

  static SeriesMatrix identity(int n, MatrixMode m = MatrixMode::Real) {
    SeriesMatrix out(n, n, m);
    for (int i = 0; i < n; ++i) out.at(i, i) = PuiseuxPoly::one();
    return out;
  }

  const PuiseuxPoly& at(int r, int c) const {
    return entries[std::size_t(r) * cols + c];
  }
  PuiseuxPoly& at(int r, int c) { return entries[std::size_t(r) * cols + c]; }

  bool isSquare() const { return rows == cols; }

  void checkRealMode() const {
    if (mode != MatrixMode::Real) return;
    for (const auto& e : entries)
      if (!e.isReal())
        throw InputError("real-mode matrix has a complex entry");
  }

  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
  }
};

inline SeriesMatrix matmul(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.cols != b.rows) throw InputError("matmul: dimension mismatch");
  MatrixMode m = (a.mode == MatrixMode::Complex || b.mode == MatrixMode::Complex)
                     ? MatrixMode::Complex
                     : MatrixMode::Real;
  SeriesMatrix out(a.rows, b.cols, m);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      PuiseuxPoly s;
      for (int k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
      out.at(i, j) = std::move(s);
    }
  return out;
}

inline SeriesMatrix conjTranspose(const SeriesMatrix& a) {
  SeriesMatrix out(a.cols, a.rows, a.mode);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) out.at(j, i) = conj(a.at(i, j));
  return out;
}

inline bool isUpperTriangular(const SeriesMatrix& b) {
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < std::min(i, b.cols); ++j)
      if (!b.at(i, j).isZero()) return false;
  return true;
}

// Multiplies row r (0-based) by the given series.
inline void scaleRow(SeriesMatrix& m, int r, const PuiseuxPoly& factor) {
  for (int c = 0; c < m.cols; ++c) m.at(r, c) = m.at(r, c) * factor;
}

inline SeriesMatrix halveExponents(const SeriesMatrix& m) {
  SeriesMatrix out(m.rows, m.cols, m.mode);
  for (std::size_t i = 0; i < m.entries.size(); ++i)
    out.entries[i] = halveExponents(m.entries[i]);
  return out;
}

// Exact determinant of the submatrix with rows T and columns S (bitmasks),
// by division-free Laplace expansion with memoization on column subsets.
// The empty minor is 1.
inline PuiseuxPoly minorDet(const SeriesMatrix& b, Mask rowsMask, Mask colsMask) {
  if (subsetSize(rowsMask) != subsetSize(colsMask))
    throw InputError("minorDet: row and column sets differ in size");
  auto rowIdx = maskElements(rowsMask);
  auto colIdx = maskElements(colsMask);
  const int k = static_cast<int>(rowIdx.size());
  for (int r : rowIdx)
    if (r > b.rows) throw InputError("minorDet: row index out of range");
  for (int c : colIdx)
    if (c > b.cols) throw InputError("minorDet: column index out of range");
  if (k == 0) return PuiseuxPoly::one();

  // level j holds determinants on the first j rows of T and each j-subset
  // of the selected columns, keyed by a mask over positions 0..k-1
  std::map<Mask, PuiseuxPoly> level;
  level[0] = PuiseuxPoly::one();
  for (int j = 1; j <= k; ++j) {
    std::map<Mask, PuiseuxPoly> next;
    for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
      if (subsetSize(sub) != j) continue;
      PuiseuxPoly det;
      int pos = 0;
      for (int c = 0; c < k; ++c) {
        if (!(sub & (Mask{1} << c))) continue;
        const PuiseuxPoly& entry = b.at(rowIdx[j - 1] - 1, colIdx[c] - 1);
        if (!entry.isZero()) {
          PuiseuxPoly term = entry * level[sub & ~(Mask{1} << c)];
          if (((j - 1) + pos) % 2 == 0)
            det += term;
          else
            det -= term;
        }
        ++pos;
      }
      next[sub] = std::move(det);
    }
    level = std::move(next);
  }
  return level[(Mask{1} << k) - 1];
}

inline PuiseuxPoly det(const SeriesMatrix& b) {
  if (!b.isSquare()) throw InputError("det: square matrix required");
  Mask full = (Mask{1} << b.rows) - 1;
  return minorDet(b, full, full);
}

// Gram construction A = B* B; errors on singular B since the result would
// only be positive semidefinite.
inline SeriesMatrix gram(const SeriesMatrix& b) {
  if (!b.isSquare()) throw InputError("gram: square matrix required");
  if (det(b).isZero()) throw InputError("Gram of singular matrix is not PD");
  return matmul(conjTranspose(b), b);
}

// Positive definite = symmetric (real mode) or Hermitian (complex mode)
// with every nonempty principal minor positive.
inline bool isPositiveDefinite(const SeriesMatrix& a) {
  if (!a.isSquare()) throw InputError("isPositiveDefinite: square matrix required");
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (!(a.at(i, j) == conj(a.at(j, i))))
        throw InputError(a.mode == MatrixMode::Real
                             ? "isPositiveDefinite: matrix is not symmetric"
                             : "isPositiveDefinite: matrix is not Hermitian");
  for (Mask s = 1; s < (Mask{1} << a.rows); ++s) {
    PuiseuxPoly m = minorDet(a, s, s);
    if (!m.isReal())
      throw InternalError("principal minor of a Hermitian matrix is not real");
    if (!isPositive(m)) return false;
  }
  return true;
}

// F(S) = nu(A_S), the tropicalized principal-minor vector, with F(empty)=0.
inline SetFunction tropPrincipalMinors(const SeriesMatrix& a) {
  if (!a.isSquare())
    throw InputError("tropPrincipalMinors: square matrix required");
  SetFunction f(a.rows);
  f.at(0) = TropValue(Rational(0));
  for (Mask s = 1; s < (Mask{1} << a.rows); ++s) {
    PuiseuxPoly m = minorDet(a, s, s);
    if (m.isZero())
      throw InputError("zero principal minor at S = {" +
                       subsetKey(s, a.rows) + "}");
    f.at(s) = TropValue(nu(m));
  }
  return f;
}

// nu(A(S,S)) = max_T 2 nu(B(T,S)) for A = B* B: the summands conj(B(T,S)) *
// B(T,S) of the Cauchy-Binet expansion are nonnegative, so no cancellation
// can occur.  Verified exhaustively over all S.
inline bool verifyCauchyBinetValuation(const SeriesMatrix& b) {
  SeriesMatrix a = gram(b);
  const int n = b.rows;
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    const int k = subsetSize(s);
    TropValue best = TropValue::bottom();
    for (Mask t = 0; t < (Mask{1} << n); ++t) {
      if (subsetSize(t) != k) continue;
      PuiseuxPoly m = minorDet(b, t, s);
      if (m.isZero()) continue;
      best = TropValue::max(best, TropValue(2 * nu(m)));
    }
    PuiseuxPoly as = minorDet(a, s, s);
    TropValue lhs = as.isZero() ? TropValue::bottom() : TropValue(nu(as));
    if (lhs != best) return false;
  }
  return true;
}

// F(S) = nu(B([|S|], S)) for upper triangular B: the flag valuation of the
// flag spanned by the leading rows, with all tropical scalars zero.
inline SetFunction flagValuation(const SeriesMatrix& b) {
  if (!b.isSquare()) throw InputError("flagValuation: square matrix required");
  if (!isUpperTriangular(b))
    throw InputError("flagValuation: upper triangular matrix required");
  SetFunction f(b.rows);
  f.at(0) = TropValue(Rational(0));
  for (Mask s = 1; s < (Mask{1} << b.rows); ++s) {
    Mask top = (Mask{1} << subsetSize(s)) - 1;
    PuiseuxPoly m = minorDet(b, top, s);
    if (m.isZero())
      throw InputError("flag point has vanishing Pluecker coordinate at S = {" +
                       subsetKey(s, b.rows) + "}");
    f.at(s) = TropValue(nu(m));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Matrix file format: a header line "rows cols real|complex" followed by one
// line per row with ';'-separated entries in the series literal grammar.

inline SeriesMatrix parseMatrixFile(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw InputError("empty matrix file");
  std::istringstream hs(header);
  int rows = 0, cols = 0;
  std::string modeWord;
  if (!(hs >> rows >> cols >> modeWord))
    throw InputError("matrix header must be \"rows cols real|complex\"");
  if (rows < 1 || cols < 1 || rows > 16 || cols > 32)
    throw InputError("matrix dimensions out of range");
  MatrixMode mode;
  if (modeWord == "real")
    mode = MatrixMode::Real;
  else if (modeWord == "complex")
    mode = MatrixMode::Complex;
  else
    throw InputError("matrix mode must be \"real\" or \"complex\"");
  SeriesMatrix m(rows, cols, mode);
  for (int r = 0; r < rows; ++r) {
    std::string line;
    if (!std::getline(in, line))
      throw InputError("matrix file ended before row " + std::to_string(r + 1));
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
      std::size_t semi = line.find(';', pos);
      parts.push_back(line.substr(pos, semi == std::string::npos
                                           ? std::string::npos
                                           : semi - pos));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    if (static_cast<int>(parts.size()) != cols)
      throw InputError("row " + std::to_string(r + 1) + " has " +
                       std::to_string(parts.size()) + " entries, expected " +
                       std::to_string(cols));
    for (int c = 0; c < cols; ++c) m.at(r, c) = parseSeries(parts[c]);
  }
  std::string tail;
  while (std::getline(in, tail)) {
    for (char ch : tail)
      if (!std::isspace(static_cast<unsigned char>(ch)))
        throw InputError("trailing content after matrix rows");
  }
  m.checkRealMode();
  return m;
}

inline std::string printMatrixFile(const SeriesMatrix& m) {
  std::string out = std::to_string(m.rows) + " " + std::to_string(m.cols) +
                    (m.mode == MatrixMode::Real ? " real" : " complex") + "\n";
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (c) out += "; ";
      out += printSeries(m.at(r, c));
    }
    out += "\n";
  }
  return out;
}

}  // namespace tropmin
