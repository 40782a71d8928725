#pragma once

// Cochain complexes of graded free modules over A = Q/I.
//
// A FreeComplex is either a finite window F^start -> ... -> F^{start+len-1}
// (zero outside), or periodic of period s: modules and matrices for one period
// with F^{i+s} = F^i(twist) and d^{i+s} = d^i. The twist is an internal degree
// shift; graded periodic complexes need one whenever the differentials have
// positive degree.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmperiodica/matrix.hpp"
#include "cmperiodica/quotient_ring.hpp"

namespace cmperiodica {

enum class Status { pass, fail, skipped, provisional };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::provisional: return "provisional";
  }
  return "?";
}

/// Outcome of one named verification.
struct Check {
  std::string name;
  Status status = Status::pass;
  std::string detail;

  bool ok() const { return status == Status::pass || status == Status::skipped || status == Status::provisional; }
  static Check passed(std::string n, std::string d = {}) { return {std::move(n), Status::pass, std::move(d)}; }
  static Check failed(std::string n, std::string d) { return {std::move(n), Status::fail, std::move(d)}; }
  static Check skipped(std::string n, std::string d) { return {std::move(n), Status::skipped, std::move(d)}; }
};

inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
inline int floor_mod(int a, int b) { return a - b * floor_div(a, b); }

template <class K>
struct FreeComplex {
  RingPtr<K> ring;
  int start = 0;
  std::vector<FreeModule> modules;
  std::vector<Matrix<K>> maps;  // maps[k]: F^{start+k} -> F^{start+k+1}
  std::optional<int> period;
  int twist = 0;

  bool is_periodic() const { return period.has_value(); }
  /// Number of stored modules.
  int length() const { return static_cast<int>(modules.size()); }
  int end() const { return start + length(); }  // one past the last stored index

  bool in_window(int i) const { return is_periodic() || (i >= start && i < end()); }

  FreeModule module(int i) const {
    if (is_periodic()) {
      const int q = floor_div(i - start, *period), r = floor_mod(i - start, *period);
      return modules[r].twisted(q * twist);
    }
    if (i < start || i >= end()) return FreeModule{};
    return modules[i - start];
  }
  int rank(int i) const { return module(i).rank(); }

  /// d^i: F^i -> F^{i+1}; a zero matrix outside the window.
  Matrix<K> differential(int i) const {
    if (is_periodic()) return maps[floor_mod(i - start, *period)];
    if (i >= start && i - start < static_cast<int>(maps.size())) return maps[i - start];
    return Matrix<K>(rank(i + 1), rank(i));
  }

  /// Indices whose differential is stored: one period, or the window.
  std::vector<int> stored_indices() const {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(maps.size()); ++k) out.push_back(start + k);
    return out;
  }
};

template <class K>
FreeComplex<K> make_periodic(RingPtr<K> A, std::vector<FreeModule> modules, std::vector<Matrix<K>> maps, int twist) {
  FreeComplex<K> F;
  F.ring = std::move(A);
  F.period = static_cast<int>(modules.size());
  F.modules = std::move(modules);
  F.maps = std::move(maps);
  F.twist = twist;
  return F;
}

template <class K>
FreeComplex<K> make_window(RingPtr<K> A, int start, std::vector<FreeModule> modules, std::vector<Matrix<K>> maps) {
  FreeComplex<K> F;
  F.ring = std::move(A);
  F.start = start;
  F.modules = std::move(modules);
  F.maps = std::move(maps);
  return F;
}

/// Dimension mismatches and inhomogeneous entries, reported before d^2 = 0.
template <class K>
Check check_structure(const FreeComplex<K>& F) {
  const std::string name = "structure";
  if (F.modules.empty()) return Check::failed(name, "empty window");
  if (F.is_periodic()) {
    if (*F.period <= 0) return Check::failed(name, "period must be positive");
    if (static_cast<int>(F.maps.size()) != *F.period || F.length() != *F.period)
      return Check::failed(name, "a periodic complex stores exactly one period of modules and matrices");
  } else if (F.maps.size() + 1 != F.modules.size()) {
    return Check::failed(name, "a window of " + std::to_string(F.modules.size()) + " modules needs " +
                                   std::to_string(F.modules.size() - 1) + " matrices");
  }
  for (int i : F.stored_indices()) {
    const Matrix<K>& d = F.maps[i - F.start];
    FreeModule src = F.module(i), tgt = F.module(i + 1);
    if (d.rows != tgt.rank() || d.cols != src.rank())
      return Check::failed(name, "d^" + std::to_string(i) + " is " + std::to_string(d.rows) + "x" +
                                     std::to_string(d.cols) + " but maps rank " + std::to_string(src.rank()) +
                                     " to rank " + std::to_string(tgt.rank()));
    if (auto v = homogeneity_violation(*F.ring, d, src, tgt)) return Check::failed(name, "d^" + std::to_string(i) + ": " + *v);
  }
  return Check::passed(name);
}

/// d^{i+1} d^i = 0 over A for every composable stored pair, including the wrap-around.
template <class K>
Check check_complex(const FreeComplex<K>& F) {
  Check s = check_structure(F);
  if (!s.ok()) return s;
  const std::string name = "d^2 = 0";
  std::vector<int> idx = F.stored_indices();
  if (!F.is_periodic() && !idx.empty()) idx.pop_back();
  for (int i : idx) {
    Matrix<K> sq = mul(*F.ring, F.differential(i + 1), F.differential(i));
    if (auto pos = first_nonzero(*F.ring, sq))
      return Check::failed(name, "d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " has entry (" +
                                     std::to_string(pos->first) + "," + std::to_string(pos->second) +
                                     ") = " + F.ring->to_string(sq(pos->first, pos->second)));
  }
  return Check::passed(name);
}

template <class K>
bool is_minimal_matrix(const QuotientRing<K>& A, const Matrix<K>& m) {
  for (const auto& e : m.entries)
    if (!A.field().is_zero(A.base().constant_term(A.reduce(e)))) return false;
  return true;
}

template <class K>
bool is_minimal(const FreeComplex<K>& F) {
  for (const auto& d : F.maps)
    if (!is_minimal_matrix(*F.ring, d)) return false;
  return true;
}

/// F[n]^i = F^{i+n} with differential (-1)^n d^{i+n}.
template <class K>
FreeComplex<K> shift(const FreeComplex<K>& F, int n) {
  FreeComplex<K> G = F;
  G.start = F.start - n;
  if (n % 2 != 0) {
    const K& k = F.ring->field();
    for (auto& d : G.maps) d = scale(*F.ring, d, k.neg(k.one()));
  }
  return G;
}

/// Rotates a periodic complex so that its stored period starts at index `start`.
template <class K>
FreeComplex<K> rebase(const FreeComplex<K>& F, int start) {
  if (!F.is_periodic()) throw PreconditionError("rebase applies to periodic complexes");
  FreeComplex<K> G = F;
  G.start = start;
  for (int k = 0; k < *F.period; ++k) {
    G.modules[k] = F.module(start + k);
    G.maps[k] = F.differential(start + k);
  }
  return G;
}

/// Data equality of two periodic complexes as functions of the index: the
/// same matrices everywhere and G^i = F^i(degree_offset).
template <class K>
bool same_periodic_data(const FreeComplex<K>& F, const FreeComplex<K>& G, int degree_offset = 0) {
  if (!F.is_periodic() || !G.is_periodic() || *F.period != *G.period || F.twist != G.twist) return false;
  if (!(*F.ring == *G.ring)) return false;
  for (int i = F.start; i < F.start + *F.period; ++i) {
    if (!(F.differential(i) == G.differential(i))) return false;
    if (!(F.module(i).twisted(degree_offset) == G.module(i))) return false;
  }
  return true;
}

/// The constant rank of a periodic complex.
template <class K>
int beta_of_periodic(const FreeComplex<K>& F) {
  if (!F.is_periodic()) throw PreconditionError("beta is defined for periodic complexes");
  const int r = F.modules.front().rank();
  for (const auto& m : F.modules)
    if (m.rank() != r) throw PreconditionError("ranks are not constant; run check_rank_lemma first");
  return r;
}

/// Consecutive ranks agree; skipped when dim A = 0.
template <class K>
Check check_rank_lemma(const FreeComplex<K>& F, bool cohomology_finite_length) {
  const std::string name = "rank lemma";
  if (!F.is_periodic()) return Check::failed(name, "complex is not periodic");
  const int dim = F.ring->krull_dimension();
  if (dim <= 0) return Check::skipped(name, "dim A = 0, hypothesis d > 0 unmet");
  if (!cohomology_finite_length) return Check::skipped(name, "cohomology not of finite length");
  for (int i = F.start; i < F.start + *F.period; ++i)
    if (F.rank(i) != F.rank(i + 1))
      return Check::failed(name, "rank F^" + std::to_string(i) + " = " + std::to_string(F.rank(i)) + " but rank F^" +
                                     std::to_string(i + 1) + " = " + std::to_string(F.rank(i + 1)) +
                                     "; verified input contradicts the rank lemma");
  return Check::passed(name, "all ranks equal " + std::to_string(F.rank(F.start)));
}

/// A family phi^i: F^i -> G^{i+shift} with d_G phi^i = phi^{i+1} d_F.
template <class K>
struct ChainMap {
  int shift = 0;
  std::map<int, Matrix<K>> components;
};

template <class K>
Check check_chain_map(const FreeComplex<K>& F, const FreeComplex<K>& G, const ChainMap<K>& phi) {
  const std::string name = "chain map";
  const QuotientRing<K>& A = *F.ring;
  for (const auto& [i, m] : phi.components) {
    if (m.rows != G.rank(i + phi.shift) || m.cols != F.rank(i))
      return Check::failed(name, "component " + std::to_string(i) + " has the wrong shape");
    auto next = phi.components.find(i + 1);
    if (next == phi.components.end()) continue;
    Matrix<K> lhs = mul(A, G.differential(i + phi.shift), m);
    Matrix<K> rhs = mul(A, next->second, F.differential(i));
    if (auto pos = first_nonzero(A, sub(A, lhs, rhs)))
      return Check::failed(name, "square at index " + std::to_string(i) + " fails at entry (" +
                                     std::to_string(pos->first) + "," + std::to_string(pos->second) + ")");
  }
  return Check::passed(name);
}

// ---------------------------------------------------------------- Koszul

/// Subsets of {0..n-1} of size p in lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Differential K_p -> K_{p-1} of the Koszul complex: e_S -> sum_k (-1)^k x_{s_k} e_{S - s_k}.
template <class K>
Matrix<K> koszul_matrix(const QuotientRing<K>& A, const std::vector<Poly<K>>& x, int p) {
  const int n = static_cast<int>(x.size());
  auto src = subsets_of_size(n, p), tgt = subsets_of_size(n, p - 1);
  Matrix<K> m(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c)
    for (int k = 0; k < p; ++k) {
      std::vector<int> rest = src[c];
      rest.erase(rest.begin() + k);
      const int r = static_cast<int>(std::find(tgt.begin(), tgt.end(), rest) - tgt.begin());
      m(r, static_cast<int>(c)) = k % 2 == 0 ? A.reduce(x[src[c][k]]) : A.base().neg(A.reduce(x[src[c][k]]));
    }
  return m;
}

template <class K>
FreeModule koszul_module(const QuotientRing<K>& A, const std::vector<Poly<K>>& x, int p) {
  FreeModule f;
  for (const auto& S : subsets_of_size(static_cast<int>(x.size()), p)) {
    int d = 0;
    for (int s : S) d += A.base().degree(x[s]);
    f.degrees.push_back(d);
  }
  return f;
}

/// Koszul complex on x, cohomologically indexed: F^{-p} = K_p for p = n..0.
template <class K>
FreeComplex<K> koszul(RingPtr<K> A, const std::vector<Poly<K>>& x) {
  const int n = static_cast<int>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!A->base().is_homogeneous(x[i]) || x[i].is_zero())
      throw InputError("Koszul element " + std::to_string(i) + " must be nonzero and homogeneous");
  std::vector<FreeModule> mods;
  std::vector<Matrix<K>> maps;
  for (int p = n; p >= 0; --p) {
    mods.push_back(koszul_module(*A, x, p));
    if (p > 0) maps.push_back(koszul_matrix(*A, x, p));
  }
  return make_window(A, -n, std::move(mods), std::move(maps));
}

}  // namespace cmperiodica
