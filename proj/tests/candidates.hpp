#pragma once

// Random 2-periodic candidates and constant relabelings, shared by the
// property tests and the acceptance runner.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cmperiodica/constructions.hpp"

namespace candidates {

using namespace cmperiodica;
using K = PrimeField;

/// Random homogeneous form of degree d; each monomial is kept with probability `density`.
inline Poly<K> random_form(const PolyRing<K>& Q, int d, std::mt19937& rng, double density = 1.0) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::bernoulli_distribution keep(density);
  std::vector<Term<K>> terms;
  for (const auto& m : monomials_of_degree(Q, d)) {
    if (!keep(rng)) continue;
    const int c = coef(rng);
    if (c != 0) terms.push_back({m, Q.field().from_int(c)});
  }
  return Q.normalize(std::move(terms));
}

/// Random invertible constant matrix respecting the grading of f.
inline Matrix<K> random_automorphism(const QuotientRing<K>& A, const FreeModule& f, std::mt19937& rng) {
  const K& k = A.field();
  std::uniform_int_distribution<int> coef(-4, 4);
  for (;;) {
    DenseMatrix<K> m(k, f.rank(), f.rank());
    for (int r = 0; r < f.rank(); ++r)
      for (int c = 0; c < f.rank(); ++c)
        if (f.degrees[r] == f.degrees[c]) m(r, c) = k.from_int(coef(rng));
    if (dense_inverse(k, m)) return from_dense(A, m);
  }
}

inline Matrix<K> inverse_of(const QuotientRing<K>& A, const Matrix<K>& m) {
  return from_dense(A, *dense_inverse(A.field(), constant_part(A, m)));
}

/// The same periodic complex in new bases P_0, P_1: d'^0 = P_1 d^0 P_0^-1, d'^1 = P_0 d^1 P_1^-1.
inline FreeComplex<K> conjugate(const FreeComplex<K>& F, std::mt19937& rng) {
  const QuotientRing<K>& A = *F.ring;
  const Matrix<K> P0 = random_automorphism(A, F.modules[0], rng), P1 = random_automorphism(A, F.modules[1], rng);
  FreeComplex<K> G = F;
  G.maps[0] = mul(A, mul(A, P1, F.maps[0]), inverse_of(A, P0));
  G.maps[1] = mul(A, mul(A, P0, F.maps[1]), inverse_of(A, P1));
  return G;
}

struct Candidate {
  std::string kind;
  FreeComplex<K> complex;
};

/// Random matrix F^src -> F^tgt with homogeneous entries of the forced degrees.
inline Matrix<K> random_map(const PolyRing<K>& Q, const FreeModule& src, const FreeModule& tgt, std::mt19937& rng,
                            double density) {
  Matrix<K> m(tgt.rank(), src.rank());
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      const int d = src.degrees[c] - tgt.degrees[r];
      if (d >= 1) m(r, c) = random_form(Q, d, rng, density);
    }
  return m;
}

/// One candidate; the kind cycles through the families below.
///  unstructured-b: random entries, ranks (b, b), rejected unless d^2 = 0;
///  unstructured-1-2: ranks (1, 2);
///  factor-1: (a, b) with a b = 0 forced by taking one of them zero;
///  relabeled-dimN: a construction on random forms in random bases.
inline std::optional<Candidate> make_candidate(const RingPtr<K>& A, int index, std::mt19937& rng) {
  const PolyRing<K>& Q = A->base();
  const int n = Q.nvars();
  std::uniform_int_distribution<int> deg(1, 2);
  auto try_build = [&](auto&& fn) -> std::optional<Candidate> {
    try {
      return fn();
    } catch (const PreconditionError&) {
      return std::nullopt;  // random forms were not a regular sequence
    }
  };
  switch (index % 6) {
    case 0: {
      const int b = 1 + (index / 6) % n;
      const int a = deg(rng), c = deg(rng);
      FreeModule F0 = FreeModule::uniform(b, 0), F1 = FreeModule::uniform(b, -a);
      auto d0 = random_map(Q, F0, F1, rng, 0.5);
      auto d1 = random_map(Q, F1, F0.twisted(-(a + c)), rng, 0.5);
      return Candidate{"unstructured-" + std::to_string(b), make_periodic(A, {F0, F1}, {d0, d1}, -(a + c))};
    }
    case 1: {
      FreeModule F0({0}), F1({-1, -1});
      auto d0 = random_map(Q, F0, F1, rng, 0.7);
      auto d1 = random_map(Q, F1, F0.twisted(-2), rng, 0.7);
      return Candidate{"unstructured-1-2", make_periodic(A, {F0, F1}, {d0, d1}, -2)};
    }
    case 2: {
      const int a = deg(rng), c = deg(rng);
      Matrix<K> d0(1, 1), d1(1, 1);
      if (index % 4 < 2) d0(0, 0) = random_form(Q, a, rng);
      if (index % 4 != 1) d1(0, 0) = random_form(Q, c, rng);
      return Candidate{"factor-1", make_periodic(A, {FreeModule({0}), FreeModule({-a})}, {d0, d1}, -(a + c))};
    }
    case 3:
      return try_build([&]() -> std::optional<Candidate> {
        return Candidate{"relabeled-dim1", conjugate(construct_dim1(A, random_form(Q, deg(rng), rng)), rng)};
      });
    case 4:
      if (n < 2) return std::nullopt;
      return try_build([&]() -> std::optional<Candidate> {
        std::vector<Poly<K>> I, J;
        for (int i = 0; i < 2; ++i) {
          I.push_back(random_form(Q, 1, rng));
          J.push_back(random_form(Q, deg(rng), rng));
        }
        return Candidate{"relabeled-dim2", conjugate(construct_dim2(A, I, J), rng)};
      });
    default:
      if (n < 3) {
        return try_build([&]() -> std::optional<Candidate> {
          std::vector<Poly<K>> I = {random_form(Q, 1, rng), random_form(Q, 1, rng)};
          return Candidate{"relabeled-dim2", conjugate(construct_dim2(A, I, I), rng)};
        });
      }
      return try_build([&]() -> std::optional<Candidate> {
        std::vector<Poly<K>> x;
        for (int i = 0; i < 3; ++i) x.push_back(random_form(Q, 1, rng));
        return Candidate{"relabeled-dim3", conjugate(construct_dim3(A, x), rng)};
      });
  }
}

/// Outcome of a randomized suite over one ring.
struct SuiteResult {
  int generated = 0;
  int rejected_d2 = 0;  // failed d^2 = 0 or structure
  int verified_core = 0;  // complex, minimal, periodic, finite length cohomology
  int verified = 0;       // passed the whole package
  int rank_violations = 0;
  int red_alerts = 0;
  std::vector<int> verified_betas;
  std::vector<std::string> notes;
};

/// Draws candidates until `count` of them satisfy d^2 = 0; the rest are rejected.
inline SuiteResult run_suite(const RingPtr<K>& A, int count, unsigned seed) {
  SuiteResult out;
  std::mt19937 rng(seed);
  for (int index = 0; out.generated < count && index < 200 * count; ++index) {
    auto c = make_candidate(A, index, rng);
    if (!c) continue;
    const FreeComplex<K>& F = c->complex;
    bool nonzero = false;
    for (const auto& m : F.maps) nonzero = nonzero || !m.is_zero();
    if (!nonzero || !check_complex(F).ok()) {
      ++out.rejected_d2;
      continue;
    }
    ++out.generated;
    auto b = verify_periodic_package(F);
    if (b.red_alert) {
      ++out.red_alerts;
      out.notes.push_back("red alert from " + c->kind);
    }
    // ranks are compared directly on complexes passing everything except the rank checks
    bool core = true;
    for (const auto& ch : b.checks)
      if (ch.name != "rank lemma" && ch.name != "beta >= dim A" && !ch.ok()) core = false;
    if (!core) continue;
    ++out.verified_core;
    for (int i = F.start; i < F.start + *F.period; ++i)
      if (F.rank(i) != F.rank(i + 1)) {
        ++out.rank_violations;
        out.notes.push_back("rank violation from " + c->kind);
      }
    if (!b.ok()) continue;
    ++out.verified;
    if (b.beta) out.verified_betas.push_back(*b.beta);
  }
  return out;
}

/// A strictly periodic complex rewritten as a window F^0..F^3 in fresh bases
/// P_i, with psi_i = P_{i+2} P_i^-1 making it 2-periodic up to isomorphism.
struct Relabeled {
  FreeComplex<K> window;
  ChainMap<K> psi;
};

inline Relabeled relabel(const FreeComplex<K>& F, std::mt19937& rng) {
  const QuotientRing<K>& A = *F.ring;
  std::vector<Matrix<K>> P;
  std::vector<FreeModule> mods;
  for (int i = 0; i <= 3; ++i) {
    mods.push_back(F.module(i));
    P.push_back(random_automorphism(A, F.module(i), rng));
  }
  std::vector<Matrix<K>> maps;
  for (int i = 0; i < 3; ++i) maps.push_back(mul(A, mul(A, P[i + 1], F.differential(i)), inverse_of(A, P[i])));
  Relabeled r{make_window(F.ring, 0, mods, maps), {}};
  r.psi.shift = 2;
  for (int i = 0; i <= 1; ++i) r.psi.components[i] = mul(A, P[i + 2], inverse_of(A, P[i]));
  return r;
}

}  // namespace candidates
