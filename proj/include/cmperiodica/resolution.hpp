#pragma once

// Minimal graded free resolutions and Betti numbers.

#include <string>
#include <vector>

#include "cmperiodica/complex.hpp"
#include "cmperiodica/homology.hpp"
#include "cmperiodica/module_ops.hpp"

namespace cmperiodica {

/// F_0 <- F_1 <- ... <- F_n, homologically indexed; d(i): F_i -> F_{i-1}.
template <class K>
struct Resolution {
  RingPtr<K> ring;
  ModulePresentation<K> module;  // minimal presentation of the resolved module
  std::vector<FreeModule> modules;
  std::vector<Matrix<K>> maps;  // maps[i-1] = d(i)

  int steps() const { return static_cast<int>(modules.size()) - 1; }
  const FreeModule& free(int i) const { return modules.at(i); }
  const Matrix<K>& d(int i) const { return maps.at(i - 1); }
  int rank(int i) const { return i < 0 || i > steps() ? 0 : modules[i].rank(); }

  std::vector<long> betti() const {
    std::vector<long> b;
    for (const auto& m : modules) b.push_back(m.rank());
    return b;
  }

  /// Cohomological view: F^{-i} = F_i.
  FreeComplex<K> as_complex() const {
    std::vector<FreeModule> mods(modules.rbegin(), modules.rend());
    std::vector<Matrix<K>> ds(maps.rbegin(), maps.rend());
    return make_window(ring, -steps(), std::move(mods), std::move(ds));
  }
};

/// Minimal free resolution of M up to F_steps.
template <class K>
Resolution<K> minimal_free_resolution(const ModulePresentation<K>& M, int steps) {
  if (steps < 0) throw InputError("steps must be nonnegative");
  Resolution<K> res;
  res.ring = M.ring;
  res.module = minimize(M);
  const QuotientRing<K>& A = *M.ring;
  res.modules.push_back(res.module.generators);
  if (steps == 0) return res;
  FreeModule f1 = res.module.relation_degrees();
  res.modules.push_back(f1);
  res.maps.push_back(res.module.relations);
  for (int i = 2; i <= steps; ++i) {
    const FreeModule src = res.modules[i - 1];
    const FreeModule tgt = res.modules[i - 2];
    GeneratorSet<K> g;
    if (src.rank() > 0) g = syzygy(A, res.maps.back(), src, tgt);
    res.modules.push_back(g.degrees);
    res.maps.push_back(from_columns<K>(src.rank(), g.columns));
  }
  return res;
}

template <class K>
std::vector<long> betti_numbers(const ModulePresentation<K>& M, int n) {
  return minimal_free_resolution(M, n).betti();
}

/// dim_k Tor_i(M, k) from the resolution tensored with k, i = 0..steps-1
/// (the last index lacks its outgoing map).
template <class K>
std::vector<long> tor_dimensions(const Resolution<K>& res) {
  const K& k = res.ring->field();
  std::vector<long> out;
  for (int i = 0; i < res.steps(); ++i) {
    long r_in = i >= 1 ? dense_rank(k, constant_part(*res.ring, res.d(i))) : 0;
    long r_out = dense_rank(k, constant_part(*res.ring, res.d(i + 1)));
    out.push_back(res.rank(i) - r_in - r_out);
  }
  return out;
}

template <class K>
Check check_resolution(const Resolution<K>& res) {
  const std::string name = "resolution";
  const QuotientRing<K>& A = *res.ring;
  for (int i = 1; i <= res.steps(); ++i) {
    if (!is_minimal_matrix(A, res.d(i))) return Check::failed(name, "d_" + std::to_string(i) + " is not minimal");
    if (auto v = homogeneity_violation(A, res.d(i), res.free(i), res.free(i - 1)))
      return Check::failed(name, "d_" + std::to_string(i) + ": " + *v);
    if (i >= 2 && first_nonzero(A, mul(A, res.d(i - 1), res.d(i))))
      return Check::failed(name, "d_" + std::to_string(i - 1) + " d_" + std::to_string(i) + " != 0");
  }
  // exactness: the image of d_{i+1} is the whole kernel of d_i
  for (int i = 1; i + 1 <= res.steps(); ++i) {
    if (res.rank(i) == 0) continue;
    auto z = syzygy(A, res.d(i), res.free(i), res.free(i - 1));
    PresentationBasis<K> im(ModulePresentation<K>(res.ring, res.free(i), res.d(i + 1)));
    for (const auto& c : z.columns)
      if (!im.contains(c)) return Check::failed(name, "not exact at F_" + std::to_string(i));
  }
  return Check::passed(name);
}

// ---------------------------------------------------------------- short exact sequences

/// 0 -> K --iota--> M --pi--> N -> 0 on presentations; iota and pi act on generators.
template <class K>
struct ShortExactSequence {
  ModulePresentation<K> K_;
  ModulePresentation<K> M;
  ModulePresentation<K> N;
  Matrix<K> iota;  // rank(gens M) x rank(gens K)
  Matrix<K> pi;    // rank(gens N) x rank(gens M)
};

template <class K>
struct SesReport {
  std::vector<Check> checks;
  std::vector<long> betti_K, betti_M, betti_N;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

/// Every column of X lies in the submodule spanned by the columns of rel (plus I).
template <class K>
std::optional<int> first_column_outside(const ModulePresentation<K>& target, const Matrix<K>& X) {
  PresentationBasis<K> b(target);
  for (int j = 0; j < X.cols; ++j)
    if (!b.contains(X.column(j))) return j;
  return std::nullopt;
}

template <class K>
SesReport<K> verify_short_exact_tor(const ShortExactSequence<K>& s, int steps) {
  SesReport<K> rep;
  const QuotientRing<K>& A = *s.M.ring;
  auto degree_of = [&](const Column<K>& c, const FreeModule& f) {
    int d = column_degree(A, c, f);
    return d == INT_MIN ? std::string("zero") : std::to_string(d);
  };
  // maps are well defined and compose to zero
  if (auto j = first_column_outside(s.M, mul(A, s.iota, s.K_.relations)))
    rep.checks.push_back(Check::failed("iota well defined", "relation " + std::to_string(*j) + " of K is not killed"));
  else
    rep.checks.push_back(Check::passed("iota well defined"));
  if (auto j = first_column_outside(s.N, mul(A, s.pi, s.M.relations)))
    rep.checks.push_back(Check::failed("pi well defined", "relation " + std::to_string(*j) + " of M is not killed"));
  else
    rep.checks.push_back(Check::passed("pi well defined"));
  if (auto j = first_column_outside(s.N, mul(A, s.pi, s.iota)))
    rep.checks.push_back(Check::failed("pi iota = 0", "generator " + std::to_string(*j) + " of K survives"));
  else
    rep.checks.push_back(Check::passed("pi iota = 0"));
  // pi surjective: each generator of N is in im(pi) + rel(N)
  {
    const int n = s.N.num_generators();
    PresentationBasis<K> b(ModulePresentation<K>(s.N.ring, s.N.generators, hcat(s.N.relations, s.pi)));
    Check c = Check::passed("pi surjective");
    for (int j = 0; j < n; ++j) {
      Column<K> e(n);
      e[j] = A.base().one();
      if (!b.contains(e)) {
        c = Check::failed("pi surjective", "generator " + std::to_string(j) + " of N (degree " +
                                               std::to_string(s.N.generators.degrees[j]) + ") is not hit");
        break;
      }
    }
    rep.checks.push_back(c);
  }
  // exact in the middle: ker pi in im iota + rel(M)
  {
    ElimSolver<K> ker(A, s.pi, s.N.generators, s.M.generators, s.N.relations);
    PresentationBasis<K> b(ModulePresentation<K>(s.M.ring, s.M.generators, hcat(s.M.relations, s.iota)));
    Check c = Check::passed("exact at M");
    for (const auto& v : ker.kernel())
      if (!b.contains(v)) {
        c = Check::failed("exact at M", "kernel element of degree " + degree_of(v, s.M.generators) + " not in the image");
        break;
      }
    rep.checks.push_back(c);
  }
  // iota injective: iota^{-1}(rel M) = rel K
  {
    ElimSolver<K> ker(A, s.iota, s.M.generators, s.K_.generators, s.M.relations);
    PresentationBasis<K> b(s.K_);
    Check c = Check::passed("iota injective");
    for (const auto& v : ker.kernel())
      if (!b.contains(v)) {
        c = Check::failed("iota injective", "kernel element of degree " + degree_of(v, s.K_.generators));
        break;
      }
    rep.checks.push_back(c);
  }
  if (steps >= 0) {
    rep.betti_K = betti_numbers(s.K_, steps);
    rep.betti_M = betti_numbers(s.M, steps);
    rep.betti_N = betti_numbers(s.N, steps);
    Check c = Check::passed("Betti additivity", "i <= " + std::to_string(steps));
    for (int i = 0; i <= steps; ++i)
      if (rep.betti_M[i] != rep.betti_K[i] + rep.betti_N[i]) {
        c = Check::failed("Betti additivity", "beta_" + std::to_string(i) + ": " + std::to_string(rep.betti_M[i]) +
                                                  " != " + std::to_string(rep.betti_K[i]) + " + " +
                                                  std::to_string(rep.betti_N[i]));
        break;
      }
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace cmperiodica
