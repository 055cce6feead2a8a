#pragma once
// Dense exact matrices: rational elimination, Smith and Hermite normal forms.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/rational.hpp"

namespace kummer {

template <class T>
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (auto& row : init) {
      if (row.size() != cols) throw std::invalid_argument("ragged matrix literal");
      for (auto& x : row) a.push_back(x);
    }
  }
  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& r) {
    Matrix m(r.size(), r.empty() ? 0 : r[0].size());
    for (size_t i = 0; i < m.rows; ++i) {
      if (r[i].size() != m.cols) throw std::invalid_argument("ragged rows");
      for (size_t j = 0; j < m.cols; ++j) m(i, j) = r[i][j];
    }
    return m;
  }

  T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  std::vector<T> row(size_t i) const { return std::vector<T>(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

  Matrix transpose() const {
    Matrix t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix dimension mismatch");
    Matrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
      for (size_t k = 0; k < x.cols; ++k) {
        if (x(i, k) == 0) continue;
        for (size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
  }
  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.a) x *= s;
    return r;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols) throw std::invalid_argument("vector size mismatch");
    std::vector<T> r(rows, T(0));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  bool symmetric() const {
    if (rows != cols) return false;
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
};

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;

inline std::string matrix_to_string(const RatMatrix& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.rows; ++i) {
    s += i ? ",[" : "[";
    for (size_t j = 0; j < m.cols; ++j) s += (j ? "," : "") + m(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

inline RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<size_t> rref(RatMatrix& m) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline size_t rank(RatMatrix m) { return rref(m).size(); }

inline Rat det(RatMatrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  Rat d = 1;
  size_t n = m.rows;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Rat inv = 1 / m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = m.rows;
  RatMatrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
  RatMatrix r(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

struct LinearSolution {
  bool consistent = false;
  std::vector<Rat> particular;
  std::vector<std::vector<Rat>> kernel;
};

/// All solutions of M x = b: particular solution plus kernel basis, or an
/// explicit inconsistent result.
inline LinearSolution solve_linear(const RatMatrix& M, const std::vector<Rat>& b) {
  if (b.size() != M.rows) throw std::invalid_argument("right-hand side size mismatch");
  RatMatrix aug(M.rows, M.cols + 1);
  for (size_t i = 0; i < M.rows; ++i) {
    for (size_t j = 0; j < M.cols; ++j) aug(i, j) = M(i, j);
    aug(i, M.cols) = b[i];
  }
  auto piv = rref(aug);
  LinearSolution s;
  if (!piv.empty() && piv.back() == M.cols) return s;
  s.consistent = true;
  s.particular.assign(M.cols, Rat(0));
  std::vector<bool> is_piv(M.cols, false);
  for (size_t r = 0; r < piv.size(); ++r) {
    is_piv[piv[r]] = true;
    s.particular[piv[r]] = aug(r, M.cols);
  }
  for (size_t f = 0; f < M.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(M.cols, Rat(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -aug(r, f);
    s.kernel.push_back(v);
  }
  return s;
}

// ---- integer normal forms ----

struct SmithForm {
  IntMatrix U, D, V;  // U*M*V = D
};

/// Smith normal form with unimodular transforms; d_i | d_{i+1}, d_i >= 0.
inline SmithForm smith_normal_form(const IntMatrix& M) {
  size_t m = M.rows, n = M.cols;
  IntMatrix D = M, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  auto swap_rows = [&](size_t i, size_t j) {
    for (size_t k = 0; k < n; ++k) std::swap(D(i, k), D(j, k));
    for (size_t k = 0; k < m; ++k) std::swap(U(i, k), U(j, k));
  };
  auto swap_cols = [&](size_t i, size_t j) {
    for (size_t k = 0; k < m; ++k) std::swap(D(k, i), D(k, j));
    for (size_t k = 0; k < n; ++k) std::swap(V(k, i), V(k, j));
  };
  auto add_row = [&](size_t dst, size_t src, const Int& f) {  // row dst += f*row src
    for (size_t k = 0; k < n; ++k) D(dst, k) += f * D(src, k);
    for (size_t k = 0; k < m; ++k) U(dst, k) += f * U(src, k);
  };
  auto add_col = [&](size_t dst, size_t src, const Int& f) {
    for (size_t k = 0; k < m; ++k) D(k, dst) += f * D(k, src);
    for (size_t k = 0; k < n; ++k) V(k, dst) += f * V(k, src);
  };
  size_t t = 0;
  while (t < m && t < n) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    bool found = false;
    size_t pi = t, pj = t;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool done = false;
    while (!done) {
      done = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (D(i, t) != 0) {
          swap_rows(t, i);
          done = false;
        }
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (D(t, j) != 0) {
          swap_cols(t, j);
          done = false;
        }
      }
      if (done) {
        // Divisibility: d_tt must divide every remaining entry.
        for (size_t i = t + 1; i < m && done; ++i)
          for (size_t j = t + 1; j < n; ++j) {
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), D(i, j).get_mpz_t(), D(t, t).get_mpz_t());
            if (r != 0) {
              add_row(t, i, Int(1));
              done = false;
              break;
            }
          }
      }
    }
    if (D(t, t) < 0) {
      for (size_t k = 0; k < n; ++k) D(t, k) = -D(t, k);
      for (size_t k = 0; k < m; ++k) U(t, k) = -U(t, k);
    }
    ++t;
  }
  return {U, D, V};
}

/// Row-style Hermite normal form of the row lattice: nonzero rows only,
/// echelon with positive pivots and reduced entries above pivots.
inline IntMatrix hermite_normal_form(const IntMatrix& M) {
  IntMatrix H = M;
  size_t m = H.rows, n = H.cols, r = 0;
  std::vector<size_t> pivcols;
  for (size_t c = 0; c < n && r < m; ++c) {
    // Euclid down column c among rows r..m-1.
    while (true) {
      size_t p = m;
      for (size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (p == m || abs(H(i, c)) < abs(H(p, c)))) p = i;
      if (p == m) break;
      if (p != r)
        for (size_t k = 0; k < n; ++k) std::swap(H(p, k), H(r, k));
      bool clean = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        for (size_t k = 0; k < n; ++k) H(i, k) -= q * H(r, k);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < m && H(r, c) != 0) {
      if (H(r, c) < 0)
        for (size_t k = 0; k < n; ++k) H(r, k) = -H(r, k);
      for (size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        if (q != 0)
          for (size_t k = 0; k < n; ++k) H(i, k) -= q * H(r, k);
      }
      pivcols.push_back(c);
      ++r;
    }
  }
  IntMatrix out(r, n);
  for (size_t i = 0; i < r; ++i)
    for (size_t k = 0; k < n; ++k) out(i, k) = H(i, k);
  return out;
}

/// Coordinates of v in the row basis of an HNF matrix, if v lies in its span
/// over Z.
inline std::optional<std::vector<Int>> hnf_coordinates(const IntMatrix& H, std::vector<Int> v) {
  std::vector<Int> coords(H.rows, Int(0));
  size_t c = 0;
  for (size_t i = 0; i < H.rows; ++i) {
    while (c < H.cols && H(i, c) == 0) {
      if (v[c] != 0) return std::nullopt;
      ++c;
    }
    if (c == H.cols) break;
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v[c].get_mpz_t(), H(i, c).get_mpz_t());
    if (rem != 0) return std::nullopt;
    coords[i] = q;
    for (size_t k = 0; k < H.cols; ++k) v[k] -= q * H(i, k);
    ++c;
  }
  for (auto& x : v)
    if (x != 0) return std::nullopt;
  return coords;
}

inline IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) {
    if (m.a[i].get_den() != 1) throw std::domain_error("matrix is not integral");
    r.a[i] = m.a[i].get_num();
  }
  return r;
}

inline Int det_int(const IntMatrix& m) {
  Rat d = det(to_rat(m));
  return d.get_num();
}

}  // namespace kummer
