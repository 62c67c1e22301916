#pragma once

#include <vector>

#include "starcat/scalar.hpp"

namespace starcat {

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}

  T& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const T& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  void swap_rows(int i, int j) {
    for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
  }
};

// Fraction-free determinant over the polynomial ring (Bareiss one-step
// elimination; all divisions are exact).
inline Polynomial bareiss_determinant(Matrix<Polynomial> m) {
  if (m.rows != m.cols) throw error("determinant of a non-square matrix");
  const int n = m.rows;
  if (n == 0) return Polynomial(1);
  Polynomial prev(1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!m.at(i, k).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Polynomial();
    if (piv != k) {
      m.swap_rows(piv, k);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Polynomial num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw error("bareiss: division was not exact");
        m.at(i, j) = std::move(*q);
      }
      m.at(i, k) = Polynomial();
    }
    prev = m.at(k, k);
  }
  Polynomial det = m.at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

// Rank of a polynomial matrix by fraction-free echelon reduction with column
// pivoting.
inline int fraction_free_rank(Matrix<Polynomial> m) {
  int rank = 0;
  Polynomial prev(1);
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int i = rank; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank) m.swap_rows(piv, rank);
    for (int i = rank + 1; i < m.rows; ++i) {
      for (int j = c + 1; j < m.cols; ++j) {
        Polynomial num = m.at(rank, c) * m.at(i, j) - m.at(i, c) * m.at(rank, j);
        auto q = exact_divide(num, prev);
        // rank is invariant under row scaling, so the undivided value is a
        // valid (if larger) substitute
        m.at(i, j) = q ? std::move(*q) : std::move(num);
      }
      m.at(i, c) = Polynomial();
    }
    prev = m.at(rank, c);
    ++rank;
  }
  return rank;
}

struct ScalarEchelon {
  int rank = 0;
  std::vector<int> pivot_cols;
  Matrix<Scalar> rref;
};

// Gauss-Jordan over the scalar field; deterministic first-nonzero pivoting.
inline ScalarEchelon reduced_row_echelon(Matrix<Scalar> m) {
  ScalarEchelon out;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) m.swap_rows(piv, r);
    Scalar inv = m.at(r, c).inverse();
    for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.rref = std::move(m);
  return out;
}

inline int rank_of(const Matrix<Scalar>& m) { return reduced_row_echelon(m).rank; }

// Basis of { x : m x = 0 }, from the reduced echelon form.
inline std::vector<std::vector<Scalar>> kernel_basis(const Matrix<Scalar>& m) {
  ScalarEchelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols, Scalar(0));
    v[free] = Scalar(1);
    for (int r = 0; r < e.rank; ++r) v[e.pivot_cols[r]] = -e.rref.at(r, free);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace starcat
