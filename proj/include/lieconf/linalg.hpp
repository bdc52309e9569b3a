#pragma once

// Dense exact linear algebra over Rat, sized for Cartan matrices and small
// Gram/trace systems (n <= ~20). Plain Gaussian elimination throughout.

#include <cassert>
#include <optional>
#include <vector>

#include "rat.hpp"

namespace lieconf {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

inline Mat mat_zero(size_t r, size_t c) { return Mat(r, Vec(c, Rat(0))); }

inline Mat mat_id(size_t n) {
  Mat m = mat_zero(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Vec mat_vec(const Mat& a, const Vec& x) {
  Vec y(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  size_t r = a.size(), k = b.size(), c = b[0].size();
  Mat m = mat_zero(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (size_t j = 0; j < c; ++j) m[i][j] += a[i][l] * b[l][j];
  return m;
}

inline Rat dot(const Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Rat det(Mat a) {
  size_t n = a.size();
  Rat d = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      d = -d;
    }
    d *= a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return d;
}

// Solve a x = b exactly. The system may be overdetermined; returns nullopt
// iff inconsistent. Requires full column rank for a unique solution (callers
// here only use it in that regime; asserted).
inline std::optional<Vec> solve(Mat a, Vec b) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    for (size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || a[rr][c] == 0) continue;
      Rat f = a[rr][c] / a[r][c];
      for (size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
      b[rr] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t rr = r; rr < rows; ++rr)
    if (b[rr] != 0) return std::nullopt;  // inconsistent
  assert(pivot_col.size() == cols && "solve: rank-deficient system");
  Vec x(cols, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

inline size_t rank(Mat a) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (size_t rr = r + 1; rr < rows; ++rr) {
      if (a[rr][c] == 0) continue;
      Rat f = a[rr][c] / a[r][c];
      for (size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
    }
    ++r;
  }
  return r;
}

inline Mat inverse(const Mat& a) {
  size_t n = a.size();
  Mat aug(n, Vec(2 * n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && aug[piv][c] == 0) ++piv;
    assert(piv < n && "inverse: singular matrix");
    std::swap(aug[piv], aug[c]);
    Rat p = aug[c][c];
    for (size_t j = 0; j < 2 * n; ++j) aug[c][j] /= p;
    for (size_t r2 = 0; r2 < n; ++r2) {
      if (r2 == c || aug[r2][c] == 0) continue;
      Rat f = aug[r2][c];
      for (size_t j = 0; j < 2 * n; ++j) aug[r2][j] -= f * aug[c][j];
    }
  }
  Mat inv(n, Vec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

}  // namespace lieconf
