#pragma once

// Matrices over A = Q/I between graded free modules.
//
// Convention: a matrix of a map F -> G has rank(G) rows and rank(F) columns;
// entry (r, s) is the coefficient of target generator r in the image of
// source generator s.

#include <functional>
#include <string>
#include <vector>

#include "cmperiodica/linalg.hpp"
#include "cmperiodica/quotient_ring.hpp"

namespace cmperiodica {

/// Graded free module: one internal degree per basis vector.
struct FreeModule {
  std::vector<int> degrees;

  FreeModule() = default;
  explicit FreeModule(std::vector<int> d) : degrees(std::move(d)) {}
  static FreeModule uniform(int rank, int degree = 0) { return FreeModule(std::vector<int>(rank, degree)); }

  int rank() const { return static_cast<int>(degrees.size()); }
  FreeModule twisted(int t) const {
    FreeModule f = *this;
    for (int& d : f.degrees) d += t;
    return f;
  }
  friend bool operator==(const FreeModule&, const FreeModule&) = default;
};

inline FreeModule direct_sum(const FreeModule& a, const FreeModule& b) {
  FreeModule r = a;
  r.degrees.insert(r.degrees.end(), b.degrees.begin(), b.degrees.end());
  return r;
}

template <class K>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Poly<K>> entries;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

  Poly<K>& operator()(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
  const Poly<K>& operator()(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }

  std::vector<Poly<K>> column(int c) const {
    std::vector<Poly<K>> v(rows);
    for (int r = 0; r < rows; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(int c, const std::vector<Poly<K>>& v) {
    for (int r = 0; r < rows; ++r) (*this)(r, c) = v[r];
  }
  bool is_zero() const {
    for (const auto& e : entries)
      if (!e.is_zero()) return false;
    return true;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class K>
Matrix<K> identity_matrix(const QuotientRing<K>& A, int n) {
  Matrix<K> m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = A.base().one();
  return m;
}

template <class K>
Matrix<K> from_columns(int rows, const std::vector<std::vector<Poly<K>>>& cols) {
  Matrix<K> m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols; ++c) m.set_column(c, cols[c]);
  return m;
}

template <class K>
Matrix<K> reduce(const QuotientRing<K>& A, Matrix<K> m) {
  for (auto& e : m.entries) e = A.reduce(e);
  return m;
}

/// Product over Q without reduction modulo I.
template <class K>
Matrix<K> mul_lifted(const PolyRing<K>& Q, const Matrix<K>& x, const Matrix<K>& y) {
  if (x.cols != y.rows)
    throw ConsistencyError("matrix product: " + std::to_string(x.rows) + "x" + std::to_string(x.cols) + " times " +
                           std::to_string(y.rows) + "x" + std::to_string(y.cols));
  Matrix<K> r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int l = 0; l < x.cols; ++l) {
      if (x(i, l).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        if (y(l, j).is_zero()) continue;
        r(i, j) = Q.add(r(i, j), Q.mul(x(i, l), y(l, j)));
      }
    }
  return r;
}

template <class K>
Matrix<K> mul(const QuotientRing<K>& A, const Matrix<K>& x, const Matrix<K>& y) {
  return reduce(A, mul_lifted(A.base(), x, y));
}

template <class K>
Matrix<K> add(const QuotientRing<K>& A, const Matrix<K>& x, const Matrix<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw ConsistencyError("matrix sum: dimension mismatch");
  Matrix<K> r = x;
  for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] = A.base().add(r.entries[i], y.entries[i]);
  return r;
}

template <class K>
Matrix<K> sub(const QuotientRing<K>& A, const Matrix<K>& x, const Matrix<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw ConsistencyError("matrix difference: dimension mismatch");
  Matrix<K> r = x;
  for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] = A.base().sub(r.entries[i], y.entries[i]);
  return r;
}

template <class K>
Matrix<K> scale(const QuotientRing<K>& A, const Matrix<K>& x, const typename K::Elem& c) {
  Matrix<K> r = x;
  for (auto& e : r.entries) e = A.base().scale(e, c);
  return r;
}

template <class K>
Matrix<K> scale(const QuotientRing<K>& A, const Matrix<K>& x, const Poly<K>& c) {
  Matrix<K> r = x;
  for (auto& e : r.entries) e = A.mul(e, c);
  return r;
}

template <class K>
Matrix<K> transpose(const Matrix<K>& x) {
  Matrix<K> r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

template <class K>
Matrix<K> map_entries(const Matrix<K>& x, const std::function<Poly<K>(const Poly<K>&)>& fn) {
  Matrix<K> r = x;
  for (auto& e : r.entries) e = fn(e);
  return r;
}

/// [x | y]
template <class K>
Matrix<K> hcat(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.rows != y.rows && x.cols > 0 && y.cols > 0) throw ConsistencyError("hcat: row mismatch");
  const int rows = x.cols > 0 ? x.rows : y.rows;
  Matrix<K> r(rows, x.cols + y.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
  }
  return r;
}

template <class K>
Matrix<K> block_diagonal(const std::vector<Matrix<K>>& blocks) {
  int rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows;
    cols += b.cols;
  }
  Matrix<K> r(rows, cols);
  int ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) r(ro + i, co + j) = b(i, j);
    ro += b.rows;
    co += b.cols;
  }
  return r;
}

/// x (tensor) Id_n with the Id index varying fastest: entry ((i,a),(j,b)) = x(i,j) [a==b].
template <class K>
Matrix<K> kron_identity(const Matrix<K>& x, int n) {
  Matrix<K> r(x.rows * n, x.cols * n);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      for (int a = 0; a < n; ++a) r(i * n + a, j * n + a) = x(i, j);
  return r;
}

/// Id_n (tensor) x: n diagonal copies of x.
template <class K>
Matrix<K> identity_kron(int n, const Matrix<K>& x) {
  return block_diagonal(std::vector<Matrix<K>>(n, x));
}

template <class K>
Matrix<K> submatrix(const Matrix<K>& x, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix<K> r(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(int(i), int(j)) = x(rows[i], cols[j]);
  return r;
}

/// Constant parts of the entries, i.e. the matrix modulo the irrelevant ideal.
template <class K>
DenseMatrix<K> constant_part(const QuotientRing<K>& A, const Matrix<K>& x) {
  DenseMatrix<K> d(A.field(), x.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) d(i, j) = A.base().constant_term(x(i, j));
  return d;
}

template <class K>
Matrix<K> from_dense(const QuotientRing<K>& A, const DenseMatrix<K>& d) {
  Matrix<K> m(d.rows, d.cols);
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j) m(i, j) = A.base().constant(d(i, j));
  return m;
}

/// First nonzero entry of M modulo I, if any.
template <class K>
std::optional<std::pair<int, int>> first_nonzero(const QuotientRing<K>& A, const Matrix<K>& m) {
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!A.is_zero(m(i, j))) return std::make_pair(i, j);
  return std::nullopt;
}

/// Describes the first entry that violates deg(entry) = deg(source_s) - deg(target_r).
template <class K>
std::optional<std::string> homogeneity_violation(const QuotientRing<K>& A, const Matrix<K>& m,
                                                 const FreeModule& source, const FreeModule& target) {
  if (m.rows != target.rank() || m.cols != source.rank())
    return "matrix is " + std::to_string(m.rows) + "x" + std::to_string(m.cols) + " but maps rank " +
           std::to_string(source.rank()) + " to rank " + std::to_string(target.rank());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const Poly<K>& e = m(i, j);
      if (e.is_zero()) continue;
      const int want = source.degrees[j] - target.degrees[i];
      if (!A.base().is_homogeneous(e) || A.base().degree(e) != want)
        return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + A.to_string(e) +
               " is not homogeneous of degree " + std::to_string(want);
    }
  return std::nullopt;
}

}  // namespace cmperiodica
