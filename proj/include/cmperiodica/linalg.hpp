#pragma once

// Dense linear algebra over an exact field.

#include <optional>
#include <string>
#include <vector>

#include "cmperiodica/error.hpp"

namespace cmperiodica {

template <class K>
struct DenseMatrix {
  using Elem = typename K::Elem;
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  DenseMatrix() = default;
  DenseMatrix(const K& k, int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, k.zero()) {}

  Elem& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Elem& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

template <class K>
DenseMatrix<K> dense_identity(const K& k, int n) {
  DenseMatrix<K> m(k, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

template <class K>
DenseMatrix<K> dense_mul(const K& k, const DenseMatrix<K>& x, const DenseMatrix<K>& y) {
  if (x.cols != y.rows) throw ConsistencyError("dense_mul: dimension mismatch");
  DenseMatrix<K> r(k, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int l = 0; l < x.cols; ++l) {
      if (k.is_zero(x(i, l))) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) = k.add(r(i, j), k.mul(x(i, l), y(l, j)));
    }
  return r;
}

template <class K>
DenseMatrix<K> dense_add(const K& k, const DenseMatrix<K>& x, const DenseMatrix<K>& y, typename K::Elem cy) {
  DenseMatrix<K> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = k.add(r.a[i], k.mul(cy, y.a[i]));
  return r;
}

template <class K>
DenseMatrix<K> dense_transpose(const K& k, const DenseMatrix<K>& x) {
  DenseMatrix<K> r(k, x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

template <class K>
bool dense_is_zero(const K& k, const DenseMatrix<K>& x) {
  for (const auto& v : x.a)
    if (!k.is_zero(v)) return false;
  return true;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class K>
std::vector<int> row_reduce(const K& k, DenseMatrix<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < m.cols && row < m.rows; ++c) {
    int p = -1;
    for (int r = row; r < m.rows; ++r)
      if (!k.is_zero(m(r, c))) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    auto inv = k.inv(m(row, c));
    for (int j = 0; j < m.cols; ++j) m(row, j) = k.mul(m(row, j), inv);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || k.is_zero(m(r, c))) continue;
      auto f = m(r, c);
      for (int j = 0; j < m.cols; ++j) m(r, j) = k.sub(m(r, j), k.mul(f, m(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class K>
int dense_rank(const K& k, DenseMatrix<K> m) {
  return static_cast<int>(row_reduce(k, m).size());
}

/// Basis of the right kernel, as the columns of the result.
template <class K>
DenseMatrix<K> nullspace(const K& k, DenseMatrix<K> m) {
  std::vector<int> piv = row_reduce(k, m);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < m.cols; ++c)
    if (!is_piv[c]) free.push_back(c);
  DenseMatrix<K> n(k, m.cols, static_cast<int>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    n(free[f], static_cast<int>(f)) = k.one();
    for (std::size_t r = 0; r < piv.size(); ++r)
      n(piv[r], static_cast<int>(f)) = k.neg(m(static_cast<int>(r), free[f]));
  }
  return n;
}

template <class K>
std::optional<DenseMatrix<K>> dense_inverse(const K& k, const DenseMatrix<K>& m) {
  if (m.rows != m.cols) return std::nullopt;
  const int n = m.rows;
  DenseMatrix<K> aug(k, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = k.one();
  }
  std::vector<int> piv = row_reduce(k, aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  DenseMatrix<K> inv(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Projection onto k^n / colspan(rel): returns (proj, lift) with proj of size
/// q x n and lift of size n x q choosing standard basis vectors for a complement.
template <class K>
std::pair<DenseMatrix<K>, DenseMatrix<K>> quotient_space(const K& k, const DenseMatrix<K>& rel, int n) {
  // row-reduce rel^T: pivots mark coordinates expressible by the others
  DenseMatrix<K> rt = rel.rows == n ? dense_transpose(k, rel) : DenseMatrix<K>(k, 0, n);
  std::vector<int> piv = row_reduce(k, rt);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> keep;
  for (int c = 0; c < n; ++c)
    if (!is_piv[c]) keep.push_back(c);
  const int q = static_cast<int>(keep.size());
  DenseMatrix<K> proj(k, q, n), lift(k, n, q);
  // coordinate piv[r] equals -sum_{c kept} rt(r, c) * coordinate c modulo relations
  for (int i = 0; i < q; ++i) {
    proj(i, keep[i]) = k.one();
    lift(keep[i], i) = k.one();
  }
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (int i = 0; i < q; ++i) proj(i, piv[r]) = k.neg(rt(static_cast<int>(r), keep[i]));
  return {proj, lift};
}

}  // namespace cmperiodica
