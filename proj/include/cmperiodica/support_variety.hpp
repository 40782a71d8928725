#pragma once

// Support varieties over complete intersections from truncated Ext windows.

#include <string>
#include <vector>

#include "cmperiodica/eisenbud.hpp"
#include "cmperiodica/growth.hpp"

namespace cmperiodica {

/// True when V presents k in degree 0 (one generator killed by every variable).
template <class K>
bool is_residue_field(const ModulePresentation<K>& V) {
  if (V.num_generators() != 1 || V.generators.degrees[0] != 0) return false;
  PresentationBasis<K> b(V);
  for (int i = 0; i < V.ring->nvars(); ++i)
    if (!b.contains(Column<K>{V.ring->base().var(i)})) return false;
  return !b.contains(Column<K>{V.ring->base().one()});
}

/// Ext window of (U, V): resolves U to bound + 1 and reads off the operator action.
template <class K>
ExtWindow<K> ext_window(const ModulePresentation<K>& U, const ModulePresentation<K>& V, int bound) {
  const QuotientRing<K>& A = *U.ring;
  Check ci = check_complete_intersection(A);
  if (!ci.ok()) throw PreconditionError("Ext window requires a complete intersection: " + ci.detail);
  if (bound < 0) throw InputError("bound must be nonnegative");
  Resolution<K> res = minimal_free_resolution(U, bound + 1);
  OperatorFamily<K> op = eisenbud_operators(res);
  if (is_residue_field(V)) return ext_window_residue(op, bound);
  return ext_window(op, V, bound);
}

template <class K>
struct AnnihilatorWindow {
  PolyRing<K> T;  // k[t_1..t_c], deg t_j = 2
  int bound = 0;
  int max_degree = -1;                 // t-degrees 0..max_degree are computed
  std::vector<std::vector<Poly<K>>> pieces;  // basis of the degree m component
  std::vector<Poly<K>> generators;     // minimal generators, by increasing degree
  std::vector<int> generator_degrees;
  std::vector<Poly<K>> basis;          // Groebner basis of the generated ideal
  int generation_degree = -1;          // last cohomological degree with new module generators
  bool generation_certified = false;
  bool stable = false;
  std::string diagnostics;

  explicit AnnihilatorWindow(PolyRing<K> t) : T(std::move(t)) {}
};

template <class K>
PolyRing<K> operator_ring(const K& k, int c) {
  std::vector<Variable> v;
  for (int j = 0; j < c; ++j) v.push_back({"t" + std::to_string(j + 1), 2});
  return PolyRing<K>(k, v);
}

/// Degree by degree, the polynomials in t annihilating C^n for all n in the window.
template <class K>
AnnihilatorWindow<K> annihilator_window(const ExtWindow<K>& E) {
  const K& k = E.field;
  AnnihilatorWindow<K> W(operator_ring(k, E.codim));
  const int B = E.bound;
  W.bound = B;
  // generation degree of C as a k[t]-module
  std::vector<long> fresh(B + 1);
  for (int n = 0; n <= B; ++n) {
    long r = 0;
    if (n >= 2 && E.dims[n] > 0) {
      int cols = 0;
      for (int j = 0; j < E.codim; ++j) cols += E.action[j][n - 2].cols;
      DenseMatrix<K> st(k, static_cast<int>(E.dims[n]), cols);
      int off = 0;
      for (int j = 0; j < E.codim; ++j) {
        const auto& a = E.action[j][n - 2];
        for (int r2 = 0; r2 < a.rows; ++r2)
          for (int c2 = 0; c2 < a.cols; ++c2) st(r2, off + c2) = a(r2, c2);
        off += a.cols;
      }
      r = dense_rank(k, st);
    }
    fresh[n] = E.dims[n] - r;
    if (fresh[n] > 0) W.generation_degree = n;
  }
  W.generation_certified = W.generation_degree + 4 <= B;
  const int g = std::max(W.generation_degree, 0);
  W.max_degree = (B - g) / 2;
  // monomials of degree m as exponent vectors, and their position
  auto mono_of = [&](const std::vector<int>& a) {
    Poly<K> p = W.T.one();
    for (int j = 0; j < E.codim; ++j) p = W.T.mul(p, W.T.pow(W.T.var(j), a[j]));
    return p;
  };
  std::vector<int> new_gens;
  for (int m = 0; m <= W.max_degree; ++m) {
    const auto alphas = exponent_vectors(E.codim, m);
    const int na = static_cast<int>(alphas.size());
    long rows = 0;
    for (int n = 0; n + 2 * m <= B; ++n) rows += E.dims[n] * E.dims[n + 2 * m];
    DenseMatrix<K> sys(k, static_cast<int>(rows), na);
    for (int a = 0; a < na; ++a) {
      int r = 0;
      for (int n = 0; n + 2 * m <= B; ++n) {
        auto act = monomial_action(E, alphas[a], n);
        for (std::size_t q = 0; q < act->a.size(); ++q) sys(r + static_cast<int>(q), a) = act->a[q];
        r += static_cast<int>(act->a.size());
      }
    }
    DenseMatrix<K> ns = nullspace(k, sys);
    std::vector<Poly<K>> piece;
    for (int c = 0; c < ns.cols; ++c) {
      Poly<K> p;
      for (int a = 0; a < na; ++a)
        if (!k.is_zero(ns(a, c))) p = W.T.add(p, W.T.scale(mono_of(alphas[a]), ns(a, c)));
      piece.push_back(p);
    }
    // new minimal generators: piece modulo t * (previous piece)
    std::vector<Poly<K>> span;
    if (m >= 1)
      for (const auto& p : W.pieces[m - 1])
        for (int j = 0; j < E.codim; ++j) span.push_back(W.T.mul(W.T.var(j), p));
    auto coords = [&](const Poly<K>& p) {
      std::vector<typename K::Elem> v(na, k.zero());
      for (const auto& t : p.terms)
        for (int a = 0; a < na; ++a)
          if (mono_of(alphas[a]).lead().mono == t.mono) v[a] = t.coeff;
      return v;
    };
    auto rank_of = [&](const std::vector<Poly<K>>& ps) {
      DenseMatrix<K> mtx(k, na, static_cast<int>(ps.size()));
      for (std::size_t c = 0; c < ps.size(); ++c) {
        auto v = coords(ps[c]);
        for (int a = 0; a < na; ++a) mtx(a, static_cast<int>(c)) = v[a];
      }
      return dense_rank(k, mtx);
    };
    int cur = rank_of(span);
    int added = 0;
    for (const auto& p : piece) {
      span.push_back(p);
      const int nr = rank_of(span);
      if (nr > cur) {
        W.generators.push_back(p);
        W.generator_degrees.push_back(m);
        cur = nr;
        ++added;
      } else {
        span.pop_back();
      }
    }
    new_gens.push_back(added);
    W.pieces.push_back(std::move(piece));
  }
  W.basis = W.generators.empty() ? std::vector<Poly<K>>{} : groebner(W.T, W.generators);
  bool quiet = W.max_degree >= 4;
  for (int m = std::max(0, W.max_degree - 3); m <= W.max_degree && quiet; ++m) quiet = new_gens[m] == 0;
  W.stable = quiet && W.generation_certified;
  W.diagnostics = "t-degrees 0.." + std::to_string(W.max_degree) + ", module generated in degrees <= " +
                  std::to_string(W.generation_degree) + (W.generation_certified ? "" : " (uncertified)") +
                  (quiet ? ", no new generators in the last 4 degrees" : ", generators still appearing");
  return W;
}

struct VarietyReport {
  int codim = 0;
  int dim_affine = 0;
  int dim_projective = -1;
  bool provisional = false;
  std::vector<std::string> annihilator;  // printed minimal generators
  std::vector<int> generator_degrees;
  std::optional<GrowthEstimate> cx;
  std::string diagnostics;
};

/// Krull dimension of k[t]/I via leading terms; the zero module counts as the origin.
template <class K>
int variety_dimension(const PolyRing<K>& T, const std::vector<Poly<K>>& gb) {
  std::vector<Monomial> lts;
  for (const auto& p : gb) lts.push_back(p.lead().mono);
  return std::max(monomial_ideal_dimension(T, lts), 0);
}

template <class K>
VarietyReport variety_dims(const AnnihilatorWindow<K>& W) {
  VarietyReport r;
  r.codim = W.T.nvars();
  r.dim_affine = variety_dimension(W.T, W.basis);
  r.dim_projective = r.dim_affine - 1;
  r.provisional = !W.stable;
  for (const auto& g : W.generators) r.annihilator.push_back(W.T.to_string(g));
  r.generator_degrees = W.generator_degrees;
  r.diagnostics = W.diagnostics;
  return r;
}

template <class K>
GrowthEstimate cx_pair(const ModulePresentation<K>& U, const ModulePresentation<K>& V, int bound) {
  ExtWindow<K> E = ext_window(U, V, bound);
  return complexity_estimate(E.dims);
}

/// Variety of a pair with the complexity attached.
template <class K>
VarietyReport variety(const ModulePresentation<K>& U, const ModulePresentation<K>& V, int bound,
                      std::vector<Poly<K>>* basis_out = nullptr) {
  ExtWindow<K> E = ext_window(U, V, bound);
  AnnihilatorWindow<K> W = annihilator_window(E);
  VarietyReport r = variety_dims(W);
  if (static_cast<int>(E.dims.size()) >= kMinGrowthWindow) r.cx = complexity_estimate(E.dims);
  if (basis_out) *basis_out = W.basis;
  return r;
}

struct IdentityReport {
  std::vector<Check> checks;
  VarietyReport uv, uk, vk, uu;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

/// Every element of `from` has a power (exponent <= max_power) in the ideal with basis `into`.
template <class K>
bool radical_contained(const PolyRing<K>& T, const std::vector<Poly<K>>& from, const std::vector<Poly<K>>& into,
                       int max_power) {
  for (const auto& g : from) {
    bool found = false;
    Poly<K> p = g;
    for (int e = 1; e <= max_power && !found; ++e) {
      if (normal_form(T, p, into).is_zero()) found = true;
      p = T.mul(p, g);
    }
    if (!found) return false;
  }
  return true;
}

template <class K>
IdentityReport variety_identities_check(const ModulePresentation<K>& U, const ModulePresentation<K>& V, int bound) {
  IdentityReport rep;
  const ModulePresentation<K> k = residue_field_module(U.ring);
  std::vector<Poly<K>> b_uv, b_uk, b_vk, b_uu;
  rep.uv = variety(U, V, bound, &b_uv);
  rep.uk = variety(U, k, bound, &b_uk);
  rep.vk = variety(V, k, bound, &b_vk);
  rep.uu = variety(U, U, bound, &b_uu);
  const PolyRing<K> T = operator_ring(U.ring->field(), rep.uv.codim);
  auto note = [&](const VarietyReport& r) { return r.provisional ? " (provisional)" : ""; };

  if (rep.uv.cx && rep.uv.cx->complexity) {
    const int cx = *rep.uv.cx->complexity;
    const std::string d = "dim V(U,V) = " + std::to_string(rep.uv.dim_affine) + ", cx = " + std::to_string(cx) +
                          note(rep.uv);
    rep.checks.push_back(cx == rep.uv.dim_affine ? Check::passed("dim V(U,V) = cx(U,V)", d)
                                                 : Check::failed("dim V(U,V) = cx(U,V)", d));
  } else {
    rep.checks.push_back(Check::skipped("dim V(U,V) = cx(U,V)", "complexity unstable on the window"));
  }

  const int pw = 2 * bound + 2;
  const bool a = radical_contained(T, b_uu, b_uk, pw), b = radical_contained(T, b_uk, b_uu, pw);
  const std::string rd = "dim V(U,k) = " + std::to_string(rep.uk.dim_affine) + ", dim V(U,U) = " +
                         std::to_string(rep.uu.dim_affine);
  rep.checks.push_back(a && b && rep.uk.dim_affine == rep.uu.dim_affine
                           ? Check::passed("rad a(U,k) = rad a(U,U)", rd)
                           : Check::failed("rad a(U,k) = rad a(U,U)", rd));

  std::vector<Poly<K>> sum = b_uk;
  sum.insert(sum.end(), b_vk.begin(), b_vk.end());
  const int ds = variety_dimension(T, sum.empty() ? sum : groebner(T, sum));
  const std::string id = "dim V(a(U,k) + a(V,k)) = " + std::to_string(ds) + ", dim V(U,V) = " +
                         std::to_string(rep.uv.dim_affine);
  rep.checks.push_back(ds == rep.uv.dim_affine ? Check::passed("V(U,V) = V(U) cap V(V)", id)
                                               : Check::failed("V(U,V) = V(U) cap V(V)", id));

  if (is_residue_field(V)) {
    const bool same = b_uv == b_uk;
    rep.checks.push_back(same ? Check::passed("V(U) = V(U,k)") : Check::failed("V(U) = V(U,k)", "ideals differ"));
  }
  return rep;
}

}  // namespace cmperiodica
