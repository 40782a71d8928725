#pragma once

// Cohomology of free complexes as module presentations.

#include <optional>
#include <string>
#include <vector>

#include "cmperiodica/complex.hpp"
#include "cmperiodica/module_ops.hpp"

namespace cmperiodica {

template <class K>
bool is_zero_matrix_mod(const QuotientRing<K>& A, const Matrix<K>& m) {
  return !first_nonzero(A, m).has_value();
}

/// Minimal generators of ker d^i (all of F^i when d^i = 0).
template <class K>
GeneratorSet<K> cycles(const FreeComplex<K>& F, int i) {
  const FreeModule src = F.module(i);
  const Matrix<K> d = F.differential(i);
  if (is_zero_matrix_mod(*F.ring, d)) {
    GeneratorSet<K> all;
    for (int j = 0; j < src.rank(); ++j) {
      Column<K> e(src.rank());
      e[j] = F.ring->base().one();
      all.columns.push_back(std::move(e));
    }
    all.degrees = src;
    return all;
  }
  return syzygy(*F.ring, d, src, F.module(i + 1));
}

/// H^i(F) = ker d^i / im d^{i-1}, minimally presented on generators of ker d^i.
template <class K>
ModulePresentation<K> cohomology(const FreeComplex<K>& F, int i) {
  GeneratorSet<K> z = cycles(F, i);
  if (z.columns.empty()) return ModulePresentation<K>(F.ring, FreeModule{}, Matrix<K>(0, 0));
  return subquotient(F.ring, z, F.differential(i - 1), F.module(i));
}

template <class K>
struct CohomologyEntry {
  int index = 0;
  ModulePresentation<K> presentation;
  bool finite_length = false;
  std::optional<long> length;
  std::vector<long> hilbert;  // Hilbert function from the lowest generator degree, when finite
  int hilbert_start = 0;
};

template <class K>
CohomologyEntry<K> cohomology_entry(const FreeComplex<K>& F, int i) {
  CohomologyEntry<K> e;
  e.index = i;
  e.presentation = cohomology(F, i);
  PresentationBasis<K> b(e.presentation);
  e.finite_length = b.is_finite_length();
  if (e.finite_length) {
    e.length = b.length();
    if (e.presentation.num_generators() > 0 && *e.length > 0) {
      e.hilbert_start = *std::min_element(e.presentation.generators.degrees.begin(),
                                          e.presentation.generators.degrees.end());
      for (int d = e.hilbert_start; d <= b.top_degree(); ++d) e.hilbert.push_back(b.hilbert_function(d));
    }
  }
  return e;
}

template <class K>
struct CohomologyReport {
  std::vector<CohomologyEntry<K>> entries;

  bool all_finite_length() const {
    for (const auto& e : entries)
      if (!e.finite_length) return false;
    return true;
  }
  const CohomologyEntry<K>* at(int i) const {
    for (const auto& e : entries)
      if (e.index == i) return &e;
    return nullptr;
  }
};

/// Cohomology at every stored index (one period, or the whole window).
template <class K>
CohomologyReport<K> cohomology_report(const FreeComplex<K>& F) {
  CohomologyReport<K> r;
  if (F.is_periodic()) {
    for (int k = 0; k < *F.period; ++k) r.entries.push_back(cohomology_entry(F, F.start + k));
  } else {
    for (int i = F.start; i < F.end(); ++i) r.entries.push_back(cohomology_entry(F, i));
  }
  return r;
}

/// Compares sum (-1)^i l(H^i) with the alternating sum over the window of
/// dim_k (F^i)_d, summed over all degrees d, for a finite window of finite
/// length modules F^i (A artinian); returns both values.
template <class K>
std::pair<long, long> euler_characteristics(const FreeComplex<K>& F) {
  if (F.is_periodic()) throw PreconditionError("Euler characteristic needs a finite window");
  long from_h = 0, from_f = 0;
  const QuotientRing<K>& A = *F.ring;
  int top = 0;
  while (A.hilbert_function(top + 1) > 0) {
    ++top;
    if (top > 4096) throw PreconditionError("Euler characteristic needs an artinian ring");
  }
  long dimA = 0;
  for (int d = 0; d <= top; ++d) dimA += A.hilbert_function(d);
  for (int i = F.start; i < F.end(); ++i) {
    const long sign = floor_mod(i, 2) == 0 ? 1 : -1;
    from_f += sign * dimA * F.rank(i);
    from_h += sign * length(cohomology(F, i));
  }
  return {from_h, from_f};
}

}  // namespace cmperiodica
