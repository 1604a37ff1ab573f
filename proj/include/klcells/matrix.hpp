#pragma once
// Dense matrices over A = Z[Gamma] and exact integer/rational elimination.

#include <optional>
#include <stdexcept>
#include <vector>

#include "grpring.hpp"

namespace klcells {

using AMatrix = std::vector<std::vector<GroupRingElement>>;
using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<BigRational>>;

inline AMatrix a_zero(int rows, int cols, int k) {
  return AMatrix(rows, std::vector<GroupRingElement>(cols, GroupRingElement(k)));
}

inline AMatrix a_identity(int n, int k) {
  AMatrix m = a_zero(n, n, k);
  for (int i = 0; i < n; ++i) m[i][i] = GroupRingElement::one(k);
  return m;
}

inline AMatrix a_mul(const AMatrix& x, const AMatrix& y) {
  int r = static_cast<int>(x.size());
  int m = static_cast<int>(y.size());
  int c = m ? static_cast<int>(y[0].size()) : 0;
  AMatrix z(r, std::vector<GroupRingElement>(c));
  for (int i = 0; i < r; ++i)
    for (int l = 0; l < m; ++l) {
      if (x[i][l].is_zero()) continue;
      for (int j = 0; j < c; ++j)
        if (!y[l][j].is_zero()) z[i][j].add_product(x[i][l], y[l][j]);
    }
  return z;
}

inline AMatrix a_add(AMatrix x, const AMatrix& y, const GroupRingElement& s) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j)
      if (!y[i][j].is_zero()) x[i][j] += y[i][j] * s;
  return x;
}

inline bool a_equal(const AMatrix& x, const AMatrix& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != y[i].size()) return false;
    for (std::size_t j = 0; j < x[i].size(); ++j)
      if (!(x[i][j] == y[i][j])) return false;
  }
  return true;
}

inline GroupRingElement a_trace(const AMatrix& x) {
  GroupRingElement t;
  for (std::size_t i = 0; i < x.size(); ++i) t += x[i][i];
  return t;
}

/// Rank by fraction-free (Bareiss) elimination.
inline int integer_rank(IntMatrix m) {
  int rows = static_cast<int>(m.size());
  if (!rows) return 0;
  int cols = static_cast<int>(m[0].size());
  BigInt prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

/// Inverse of a square integer matrix over Q, or nullopt when singular.
/// Forward phase is fraction-free (Bareiss) on [M | I]; the triangular
/// system is then solved exactly over Q.
inline std::optional<RatMatrix> invert_integer_matrix(const IntMatrix& M) {
  int n = static_cast<int>(M.size());
  IntMatrix a(n, std::vector<BigInt>(2 * n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(M[i].size()) != n) throw std::invalid_argument("matrix is not square");
    for (int j = 0; j < n; ++j) a[i][j] = M[i][j];
    a[i][n + i] = 1;
  }
  BigInt prev = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[c], a[piv]);
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < 2 * n; ++j) a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  RatMatrix inv(n, std::vector<BigRational>(n));
  for (int col = 0; col < n; ++col)
    for (int i = n - 1; i >= 0; --i) {
      BigRational s = BigRational(a[i][n + col]);
      for (int j = i + 1; j < n; ++j) s -= BigRational(a[i][j]) * inv[j][col];
      inv[i][col] = s / BigRational(a[i][i]);
    }
  return inv;
}

}  // namespace klcells
