#pragma once

// Independent reference computations for the test suites. Nothing here uses
// the library's Groebner, syzygy or resolution code; graded pieces are
// handled by plain Gaussian elimination over GF(p).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "cmperiodica/polynomial.hpp"

namespace oracle {

using cmperiodica::Monomial;
using cmperiodica::Poly;
using cmperiodica::PolyRing;
using cmperiodica::PrimeField;

using Vec = std::vector<std::uint32_t>;

/// Reduced row echelon form over GF(p); rows are kept sorted by pivot.
struct Echelon {
  std::uint32_t p;
  int n = 0;
  std::vector<Vec> rows;
  std::vector<int> pivots;

  Echelon(std::uint32_t prime, int dim) : p(prime), n(dim) {}

  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p - 2, b = a % p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  /// Reduces v against the rows in place; returns the first nonzero index or -1.
  int reduce(Vec& v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int c = pivots[i];
      if (v[c] == 0) continue;
      const std::uint64_t f = v[c];
      for (int j = 0; j < n; ++j)
        if (rows[i][j]) v[j] = static_cast<std::uint32_t>((v[j] + (p - f) * rows[i][j]) % p);
    }
    for (int j = 0; j < n; ++j)
      if (v[j]) return j;
    return -1;
  }
  /// Adds v to the span; returns true when it was independent.
  bool insert(Vec v) {
    const int c = reduce(v);
    if (c < 0) return false;
    const std::uint64_t s = inv(v[c]);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * s % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const std::uint64_t f = rows[i][c];
      for (int j = 0; j < n; ++j)
        if (v[j]) rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + (p - f) * v[j]) % p);
    }
    rows.push_back(std::move(v));
    pivots.push_back(c);
    return true;
  }
  int rank() const { return static_cast<int>(rows.size()); }
};

/// Kernel basis of the linear map with the given columns (each of length m).
inline std::vector<Vec> kernel(std::uint32_t p, const std::vector<Vec>& cols, int m) {
  const int n = static_cast<int>(cols.size());
  // row-reduce the augmented [col | e_j] vectors: dependencies give the kernel
  Echelon e(p, m + n);
  std::vector<Vec> out;
  for (int j = 0; j < n; ++j) {
    Vec v(m + n, 0);
    for (int i = 0; i < m; ++i) v[i] = cols[j][i];
    v[m + j] = 1;
    Vec w = v;
    const int c = e.reduce(w);
    if (c < 0 || c >= m) {
      // w has zero top part once reduced: its bottom is a kernel vector
      if (c >= 0) out.push_back(Vec(w.begin() + m, w.end()));
      continue;
    }
    e.insert(v);
  }
  return out;
}

/// The graded pieces of A = k[x]/I with standard grading, up to degree top.
struct ArtinianRing {
  const PolyRing<PrimeField>* Q;
  std::vector<Poly<PrimeField>> rel;
  std::uint32_t p;
  std::vector<std::vector<Monomial>> mono;  // monomials of Q_d
  std::vector<Echelon> ideal;               // I_d inside Q_d
  std::vector<std::vector<int>> basis;      // non-pivot monomial positions = basis of A_d
  int top = -1;                             // largest d with A_d != 0

  ArtinianRing(const PolyRing<PrimeField>& ring, std::vector<Poly<PrimeField>> relations, int max_degree)
      : Q(&ring), rel(std::move(relations)), p(ring.field().characteristic()) {
    for (int d = 0; d <= max_degree; ++d) {
      mono.push_back(monomials(d));
      Echelon e(p, static_cast<int>(mono[d].size()));
      for (const auto& f : rel) {
        const int df = Q->degree(f);
        if (df > d) continue;
        for (const auto& m : monomials(d - df)) e.insert(coords(Q->mul(Q->monomial(m, 1), f), d));
      }
      std::vector<bool> piv(mono[d].size(), false);
      for (int c : e.pivots) piv[c] = true;
      std::vector<int> b;
      for (std::size_t i = 0; i < mono[d].size(); ++i)
        if (!piv[i]) b.push_back(static_cast<int>(i));
      ideal.push_back(std::move(e));
      basis.push_back(b);
      if (!b.empty()) top = d;
    }
  }

  std::vector<Monomial> monomials(int d) const {
    std::vector<Monomial> out;
    const int n = Q->nvars();
    std::vector<int> e(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == n - 1) {
        e[i] = left;
        out.push_back(Q->mono_from_exponents(e));
        return;
      }
      for (int a = left; a >= 0; --a) {
        e[i] = a;
        rec(i + 1, left - a);
      }
    };
    if (n > 0) rec(0, d);
    return out;
  }
  int dim(int d) const { return d < 0 || d >= static_cast<int>(basis.size()) ? 0 : static_cast<int>(basis[d].size()); }

  Vec coords(const Poly<PrimeField>& f, int d) const {
    Vec v(mono[d].size(), 0);
    for (const auto& t : f.terms)
      for (std::size_t i = 0; i < mono[d].size(); ++i)
        if (mono[d][i] == t.mono) v[i] = t.coeff;
    return v;
  }
  /// Coordinates in the basis of A_d of a homogeneous f of degree d.
  Vec reduce(const Poly<PrimeField>& f, int d) const {
    if (d < 0 || d >= static_cast<int>(basis.size())) return {};
    Vec v = coords(f, d);
    ideal[d].reduce(v);
    Vec out;
    for (int i : basis[d]) out.push_back(v[i]);
    return out;
  }
  Poly<PrimeField> lift(const Vec& c, int d) const {
    Poly<PrimeField> f;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) f = Q->add(f, Q->monomial(mono[d][basis[d][i]], c[i]));
    return f;
  }
};

/// Free module over the artinian ring with a matrix of its outgoing map to a target.
struct FreeMap {
  std::vector<int> src, tgt;                        // generator degrees
  std::vector<std::vector<Poly<PrimeField>>> cols;  // cols[s][r]
};

/// Matrix in degree d of the A-linear map: basis (s, basis of A_{d - src_s}).
inline std::vector<Vec> degree_matrix(const ArtinianRing& A, const FreeMap& f, int d, int& rows) {
  rows = 0;
  for (int c : f.tgt) rows += A.dim(d - c);
  std::vector<Vec> out;
  for (std::size_t s = 0; s < f.src.size(); ++s) {
    const int e = d - f.src[s];
    for (int b = 0; b < A.dim(e); ++b) {
      Vec unit(A.dim(e), 0);
      unit[b] = 1;
      const auto mb = A.lift(unit, e);
      Vec col;
      for (std::size_t r = 0; r < f.tgt.size(); ++r) {
        const int er = d - f.tgt[r];
        Vec piece = A.reduce(A.Q->mul(mb, f.cols[s][r]), er);
        if (A.dim(er) == 0) piece.clear();
        col.insert(col.end(), piece.begin(), piece.end());
      }
      out.push_back(col);
    }
  }
  return out;
}

/// Graded Betti numbers of A/J by dense linear algebra, beta_0..beta_steps.
inline std::vector<long> betti(const ArtinianRing& A, const std::vector<Poly<PrimeField>>& J, int steps) {
  FreeMap d;
  d.tgt = {0};
  for (const auto& f : J) {
    d.src.push_back(A.Q->degree(f));
    d.cols.push_back({f});
  }
  std::vector<long> out = {1};
  if (steps >= 1) out.push_back(static_cast<long>(d.src.size()));
  for (int i = 2; i <= steps; ++i) {
    FreeMap next;
    next.tgt = d.src;
    if (d.src.empty()) {
      out.push_back(0);
      d = next;
      continue;
    }
    const int lo = *std::min_element(d.src.begin(), d.src.end());
    const int hi = *std::max_element(d.src.begin(), d.src.end()) + A.top;
    std::map<int, std::vector<Vec>> ker;  // kernel of d in degree e, coordinates in F_e
    for (int e = lo; e <= hi; ++e) {
      int rows = 0;
      auto cols = degree_matrix(A, d, e, rows);
      ker[e] = cols.empty() ? std::vector<Vec>{} : kernel(A.p, cols, rows);
      // the part generated by lower degrees: x_v * ker_{e-1}
      int n = static_cast<int>(cols.size());
      Echelon gen(A.p, n);
      if (ker.count(e - 1)) {
        for (const auto& v : ker[e - 1]) {
          // v as a column of polynomials, times each variable
          for (int x = 0; x < A.Q->nvars(); ++x) {
            Vec w;
            int off = 0;
            for (std::size_t s = 0; s < d.src.size(); ++s) {
              const int ee = e - 1 - d.src[s];
              Vec piece(v.begin() + off, v.begin() + off + A.dim(ee));
              off += A.dim(ee);
              Vec r = A.dim(e - d.src[s]) ? A.reduce(A.Q->mul(A.Q->var(x), A.lift(piece, ee)), e - d.src[s]) : Vec{};
              if (A.dim(e - d.src[s]) == 0) r.clear();
              w.insert(w.end(), r.begin(), r.end());
            }
            gen.insert(w);
          }
        }
      }
      for (const auto& v : ker[e]) {
        if (!gen.insert(v)) continue;
        next.src.push_back(e);
        std::vector<Poly<PrimeField>> col;
        int off = 0;
        for (std::size_t s = 0; s < d.src.size(); ++s) {
          const int ee = e - d.src[s];
          Vec piece(v.begin() + off, v.begin() + off + A.dim(ee));
          off += A.dim(ee);
          col.push_back(A.dim(ee) ? A.lift(piece, ee) : Poly<PrimeField>{});
        }
        next.cols.push_back(col);
      }
    }
    out.push_back(static_cast<long>(next.src.size()));
    d = next;
  }
  return out;
}

/// Coefficients of (1 + z)^n / (1 - z^2)^c up to z^N: the Betti numbers of k
/// over a complete intersection of codimension c in n variables.
inline std::vector<long> ci_poincare(int n, int c, int N) {
  std::vector<long> num(N + 1, 0);
  for (int i = 0; i <= std::min(n, N); ++i) {
    long b = 1;
    for (int j = 1; j <= i; ++j) b = b * (n - i + j) / j;
    num[i] = b;
  }
  std::vector<long> s = num;
  for (int k = 0; k < c; ++k)
    for (int i = 2; i <= N; ++i) s[i] += s[i - 2];
  return s;
}

}  // namespace oracle
