#pragma once

// Submodules of graded free A-modules: syzygies, lifting, membership,
// minimal generators, presentations and their numerical invariants.
//
// Everything is computed over Q by adjoining I * e_i to every submodule.

#include <climits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cmperiodica/groebner.hpp"
#include "cmperiodica/matrix.hpp"
#include "cmperiodica/quotient_ring.hpp"

namespace cmperiodica {

template <class K>
using Column = std::vector<Poly<K>>;

/// Internal degree of a homogeneous column in a free module; INT_MIN for zero.
template <class K>
int column_degree(const QuotientRing<K>& A, const Column<K>& col, const FreeModule& target) {
  int d = INT_MIN;
  for (int r = 0; r < static_cast<int>(col.size()); ++r) {
    const Poly<K>& e = col[r];
    if (e.is_zero()) continue;
    if (!A.base().is_homogeneous(e)) throw InputError("inhomogeneous column entry " + A.to_string(e));
    const int de = A.base().degree(e) + target.degrees[r];
    if (d != INT_MIN && de != d) throw InputError("column is not homogeneous");
    d = de;
  }
  return d;
}

template <class K>
bool column_is_zero(const Column<K>& col) {
  for (const auto& e : col)
    if (!e.is_zero()) return false;
  return true;
}

template <class K>
Column<K> reduce_column(const QuotientRing<K>& A, Column<K> col) {
  for (auto& e : col) e = A.reduce(e);
  return col;
}

/// Groebner data for the system D c = b modulo <P> + I, with D: Q^m -> Q^n.
///
/// Generators (D_j ; e_j), (P_l ; 0), (f e_i ; 0) of Q^{n+m} under an order
/// eliminating the top block. Basis elements with zero top part carry the
/// kernel { c : D c in <P> + I Q^n } in their bottom part.
template <class K>
class ElimSolver {
 public:
  ElimSolver(const QuotientRing<K>& A, const Matrix<K>& D, const FreeModule& target, const FreeModule& source,
             const Matrix<K>& P, bool keep_kernel = true)
      : A_(A), n_(target.rank()), m_(source.rank()), gb_(A.base(), make_order(target, source), keep_kernel ? INT_MAX : 1) {
    if (D.rows != n_ && m_ > 0) throw ConsistencyError("ElimSolver: matrix rows do not match the target rank");
    if (D.cols != m_) throw ConsistencyError("ElimSolver: matrix columns do not match the source rank");
    if (P.cols > 0 && P.rows != n_) throw ConsistencyError("ElimSolver: relation rows do not match the target rank");
    const auto& ar = gb_.arith();
    const K& k = A.field();
    for (int j = 0; j < m_; ++j) {
      MVec<K> v = ar.from_column(D.column(j), 0);
      v = ar.add(v, MVec<K>{{Monomial{}, n_ + j, k.one()}});
      gb_.add(std::move(v));
    }
    for (int l = 0; l < P.cols; ++l) gb_.add(ar.from_column(P.column(l), 0));
    for (const auto& f : A.relation_basis())
      for (int i = 0; i < n_; ++i) {
        MVec<K> v;
        for (const auto& t : f.terms) v.push_back({t.mono, i, t.coeff});
        gb_.add(std::move(v));
      }
    gb_.complete();
  }

  /// Generators of { c : D c in <P> + I Q^n }, reduced modulo I, nonzero.
  std::vector<Column<K>> kernel() const {
    std::vector<Column<K>> out;
    for (const auto& g : gb_.basis()) {
      if (g.front().comp < n_) continue;
      Column<K> c = reduce_column(A_, gb_.arith().to_column(g, n_, m_));
      if (!column_is_zero(c)) out.push_back(std::move(c));
    }
    return out;
  }

  /// Some c with D c = b modulo <P> + I, if b lies in <D> + <P> + I.
  std::optional<Column<K>> lift(const Column<K>& b) const {
    MVec<K> r = gb_.reduce(gb_.arith().from_column(b, 0));
    for (const auto& t : r)
      if (t.comp < n_) return std::nullopt;
    Column<K> c = gb_.arith().to_column(r, n_, m_);
    for (auto& e : c) e = A_.reduce(A_.base().neg(e));
    return c;
  }

  bool contains(const Column<K>& b) const {
    MVec<K> r = gb_.reduce(gb_.arith().from_column(b, 0));
    return r.empty() || r.front().comp >= n_;
  }

 private:
  static ModuleOrder make_order(const FreeModule& target, const FreeModule& source) {
    std::vector<int> shift = target.degrees, block(target.rank(), 0);
    for (int d : source.degrees) {
      shift.push_back(d);
      block.push_back(1);
    }
    return ModuleOrder(std::move(shift), std::move(block));
  }

  const QuotientRing<K>& A_;
  int n_, m_;
  ModuleGroebner<K> gb_;
};

template <class K>
struct GeneratorSet {
  std::vector<Column<K>> columns;
  FreeModule degrees;  // degree of each column
};

/// A minimal generating set of the submodule of A^n spanned by cols.
///
/// Candidates are visited by degree; each is kept iff it is not in the span of
/// the kept ones of no larger degree (which contains the irrelevant ideal times
/// the submodule in that degree).
template <class K>
GeneratorSet<K> minimal_generators(const QuotientRing<K>& A, const std::vector<Column<K>>& cols,
                                   const FreeModule& target) {
  struct Cand {
    int degree;
    int index;
    Column<K> col;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
    Column<K> c = reduce_column(A, cols[i]);
    if (column_is_zero(c)) continue;
    cands.push_back({column_degree(A, c, target), i, std::move(c)});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.degree < b.degree; });
  ModuleGroebner<K> gb(A.base(), ModuleOrder(target.degrees));
  for (const auto& f : A.relation_basis())
    for (int i = 0; i < target.rank(); ++i) {
      MVec<K> v;
      for (const auto& t : f.terms) v.push_back({t.mono, i, t.coeff});
      gb.add(std::move(v));
    }
  GeneratorSet<K> out;
  for (auto& c : cands) {
    gb.complete(c.degree);
    MVec<K> v = gb.arith().from_column(c.col, 0);
    if (gb.reduce(v).empty()) continue;
    gb.add(std::move(v));
    out.columns.push_back(std::move(c.col));
    out.degrees.degrees.push_back(c.degree);
  }
  return out;
}

template <class K>
Matrix<K> columns_to_matrix(int rows, const std::vector<Column<K>>& cols) {
  return from_columns<K>(rows, cols);
}

/// Minimal generators of ker(D: F -> G) over A.
template <class K>
GeneratorSet<K> syzygy(const QuotientRing<K>& A, const Matrix<K>& D, const FreeModule& source,
                       const FreeModule& target) {
  ElimSolver<K> s(A, D, target, source, Matrix<K>(target.rank(), 0));
  return minimal_generators(A, s.kernel(), source);
}

/// Lifts every column of B through D modulo I; throws if some column is not in the image.
template <class K>
Matrix<K> lift_through(const QuotientRing<K>& A, const Matrix<K>& D, const FreeModule& source,
                       const FreeModule& target, const Matrix<K>& B, const Matrix<K>& modulo = {}) {
  ElimSolver<K> s(A, D, target, source, modulo.cols > 0 ? modulo : Matrix<K>(target.rank(), 0), false);
  Matrix<K> out(source.rank(), B.cols);
  for (int j = 0; j < B.cols; ++j) {
    auto c = s.lift(B.column(j));
    if (!c) throw MathError("column " + std::to_string(j) + " does not lie in the image");
    out.set_column(j, *c);
  }
  return out;
}

// ---------------------------------------------------------------- presentations

/// coker(relations: A^m -> A^n), generators of the given degrees.
template <class K>
struct ModulePresentation {
  RingPtr<K> ring;
  FreeModule generators;
  Matrix<K> relations;  // generators.rank() rows, one column per relation

  ModulePresentation() = default;
  ModulePresentation(RingPtr<K> r, FreeModule g, Matrix<K> rel)
      : ring(std::move(r)), generators(std::move(g)), relations(std::move(rel)) {
    if (relations.cols == 0) relations = Matrix<K>(generators.rank(), 0);
    if (relations.rows != generators.rank())
      throw InputError("presentation has " + std::to_string(relations.rows) + " rows for " +
                       std::to_string(generators.rank()) + " generators");
  }

  int num_generators() const { return generators.rank(); }
  /// Degrees of the relation columns.
  FreeModule relation_degrees() const {
    FreeModule f;
    for (int j = 0; j < relations.cols; ++j) {
      int d = column_degree(*ring, relations.column(j), generators);
      if (d == INT_MIN) throw InputError("zero relation column " + std::to_string(j));
      f.degrees.push_back(d);
    }
    return f;
  }
};

template <class K>
ModulePresentation<K> residue_field_module(RingPtr<K> A) {
  const int n = A->nvars();
  Matrix<K> rel(1, n);
  for (int i = 0; i < n; ++i) rel(0, i) = A->base().var(i);
  return ModulePresentation<K>(A, FreeModule::uniform(1), rel);
}

/// A / (gens).
template <class K>
ModulePresentation<K> cyclic_module(RingPtr<K> A, const std::vector<Poly<K>>& gens) {
  Matrix<K> rel(1, static_cast<int>(gens.size()));
  for (int i = 0; i < rel.cols; ++i) rel(0, i) = A->reduce(gens[i]);
  return ModulePresentation<K>(A, FreeModule::uniform(1), rel);
}

template <class K>
ModulePresentation<K> free_module(RingPtr<K> A, const FreeModule& f) {
  return ModulePresentation<K>(A, f, Matrix<K>(f.rank(), 0));
}

/// Removes generators killed by relations with a constant entry.
template <class K>
ModulePresentation<K> prune_units(const ModulePresentation<K>& p) {
  const QuotientRing<K>& A = *p.ring;
  const K& k = A.field();
  Matrix<K> R = reduce(A, p.relations);
  std::vector<int> degs = p.generators.degrees;
  for (;;) {
    int pr = -1, pc = -1;
    for (int c = 0; c < R.cols && pr < 0; ++c)
      for (int r = 0; r < R.rows; ++r)
        if (!R(r, c).is_zero() && A.base().is_constant(R(r, c))) {
          pr = r;
          pc = c;
          break;
        }
    if (pr < 0) break;
    // generator pr equals -(1/u) * sum_{r != pr} R(r,pc) e_r; substitute into every relation
    const auto inv = k.inv(A.base().constant_term(R(pr, pc)));
    Matrix<K> next(R.rows - 1, R.cols - 1);
    for (int c = 0, nc = 0; c < R.cols; ++c) {
      if (c == pc) continue;
      Poly<K> factor = A.base().scale(R(pr, c), inv);
      for (int r = 0, nr = 0; r < R.rows; ++r) {
        if (r == pr) continue;
        next(nr, nc) = A.reduce(A.base().sub(R(r, c), A.base().mul(factor, R(r, pc))));
        ++nr;
      }
      ++nc;
    }
    degs.erase(degs.begin() + pr);
    R = std::move(next);
  }
  // drop zero columns
  std::vector<Column<K>> cols;
  for (int c = 0; c < R.cols; ++c)
    if (!column_is_zero(R.column(c))) cols.push_back(R.column(c));
  return ModulePresentation<K>(p.ring, FreeModule(degs), from_columns<K>(static_cast<int>(degs.size()), cols));
}

/// Minimal presentation: minimal generators, then minimal relations.
template <class K>
ModulePresentation<K> minimize(const ModulePresentation<K>& p) {
  ModulePresentation<K> q = prune_units(p);
  auto gens = minimal_generators(*q.ring, [&] {
    std::vector<Column<K>> c;
    for (int j = 0; j < q.relations.cols; ++j) c.push_back(q.relations.column(j));
    return c;
  }(), q.generators);
  return ModulePresentation<K>(q.ring, q.generators, from_columns<K>(q.generators.rank(), gens.columns));
}

/// Leading-term data of the relation module plus I * A^n.
template <class K>
class PresentationBasis {
 public:
  explicit PresentationBasis(const ModulePresentation<K>& p)
      : ring_(p.ring), degrees_(p.generators), gb_(p.ring->base(), ModuleOrder(p.generators.degrees)) {
    const auto& ar = gb_.arith();
    for (int j = 0; j < p.relations.cols; ++j) gb_.add(ar.from_column(p.relations.column(j), 0));
    for (const auto& f : p.ring->relation_basis())
      for (int i = 0; i < degrees_.rank(); ++i) {
        MVec<K> v;
        for (const auto& t : f.terms) v.push_back({t.mono, i, t.coeff});
        gb_.add(std::move(v));
      }
    gb_.complete();
    for (const auto& g : gb_.basis()) leads_.push_back({g.front().mono, g.front().comp});
  }

  bool is_standard(const Monomial& m, int comp) const {
    for (const auto& [lm, c] : leads_)
      if (c == comp && PolyRing<K>::divides(lm, m)) return false;
    return true;
  }

  long hilbert_function(int d) const {
    long n = 0;
    for (int i = 0; i < degrees_.rank(); ++i)
      for_each_monomial(ring_->base(), d - degrees_.degrees[i], [&](const Monomial& m) { n += is_standard(m, i) ? 1 : 0; });
    return n;
  }

  /// Index of a variable with no pure power among the leading terms of some component, or -1.
  int infinite_direction(int* comp = nullptr) const {
    const int nv = ring_->nvars();
    for (int i = 0; i < degrees_.rank(); ++i) {
      bool component_dead = false;
      for (const auto& [lm, c] : leads_)
        if (c == i && lm.is_one()) component_dead = true;
      if (component_dead) continue;
      for (int v = 0; v < nv; ++v) {
        bool found = false;
        for (const auto& [lm, c] : leads_) {
          if (c != i || lm.exp[v] == 0) continue;
          bool pure = true;
          for (int w = 0; w < nv; ++w)
            if (w != v && lm.exp[w] != 0) pure = false;
          if (pure) found = true;
        }
        if (!found) {
          if (comp) *comp = i;
          return v;
        }
      }
    }
    return -1;
  }

  bool is_finite_length() const { return infinite_direction() < 0; }

  /// Largest degree carrying a standard monomial; requires finite length.
  int top_degree() const {
    int top = INT_MIN;
    const int nv = ring_->nvars();
    for (int i = 0; i < degrees_.rank(); ++i) {
      // the standard region of component i lies in the box below the pure powers
      std::vector<int> bound(nv, 0);
      bool dead = false;
      for (const auto& [lm, c] : leads_) {
        if (c != i) continue;
        if (lm.is_one()) dead = true;
        int v = -1, cnt = 0;
        for (int w = 0; w < nv; ++w)
          if (lm.exp[w] != 0) {
            v = w;
            ++cnt;
          }
        if (cnt == 1 && (bound[v] == 0 || lm.exp[v] < bound[v])) bound[v] = lm.exp[v];
      }
      if (dead) continue;
      int maxdeg = degrees_.degrees[i];
      for (int v = 0; v < nv; ++v) maxdeg += (bound[v] - 1) * ring_->base().weight(v);
      top = std::max(top, maxdeg);
    }
    return top;
  }

  long length() const {
    int comp = -1;
    const int v = infinite_direction(&comp);
    if (v >= 0)
      throw MathError("module has infinite length: no power of " + ring_->base().variables()[v].name +
                      " kills generator " + std::to_string(comp));
    const int top = top_degree();
    if (top == INT_MIN) return 0;
    int low = INT_MAX;
    for (int d : degrees_.degrees) low = std::min(low, d);
    long n = 0;
    for (int d = low; d <= top; ++d) n += hilbert_function(d);
    return n;
  }

  bool contains(const Column<K>& c) const { return gb_.reduce(gb_.arith().from_column(c, 0)).empty(); }
  Column<K> normal_form(const Column<K>& c) const {
    return gb_.arith().to_column(gb_.reduce(gb_.arith().from_column(c, 0)), 0, degrees_.rank());
  }

 private:
  RingPtr<K> ring_;
  FreeModule degrees_;
  ModuleGroebner<K> gb_;
  std::vector<std::pair<Monomial, int>> leads_;
};

template <class K>
long hilbert_function(const ModulePresentation<K>& p, int d) {
  if (d < 0) throw InputError("hilbert_function requires d >= 0");
  return PresentationBasis<K>(p).hilbert_function(d);
}

template <class K>
bool is_finite_length(const ModulePresentation<K>& p) {
  return PresentationBasis<K>(p).is_finite_length();
}

template <class K>
long length(const ModulePresentation<K>& p) {
  return PresentationBasis<K>(p).length();
}

template <class K>
bool is_zero_module(const ModulePresentation<K>& p) {
  PresentationBasis<K> b(p);
  return b.is_finite_length() && b.length() == 0;
}

/// Presentation of (<G> + <B>) / <B> on the columns of G, all inside A^n.
template <class K>
ModulePresentation<K> subquotient(RingPtr<K> A, const GeneratorSet<K>& G, const Matrix<K>& B, const FreeModule& ambient) {
  const int m = G.degrees.rank();
  Matrix<K> Gm = from_columns<K>(ambient.rank(), G.columns);
  ElimSolver<K> s(*A, Gm, ambient, G.degrees, B.cols > 0 ? B : Matrix<K>(ambient.rank(), 0));
  auto rel = minimal_generators(*A, s.kernel(), G.degrees);
  return minimize(ModulePresentation<K>(A, G.degrees, from_columns<K>(m, rel.columns)));
}

// ---------------------------------------------------------------- ideals

/// (J : f) in A for an ideal J, reduced Groebner basis over Q including I.
template <class K>
std::vector<Poly<K>> colon(const QuotientRing<K>& A, const std::vector<Poly<K>>& J, const Poly<K>& f) {
  if (f.is_zero()) return {A.base().one()};
  Matrix<K> D(1, 1);
  D(0, 0) = f;
  Matrix<K> P(1, static_cast<int>(J.size()));
  for (int i = 0; i < P.cols; ++i) P(0, i) = J[i];
  ElimSolver<K> s(A, D, FreeModule::uniform(1, 0), FreeModule::uniform(1, A.base().degree(f)), P);
  std::vector<Poly<K>> gens = A.relations();
  for (auto& c : s.kernel()) gens.push_back(c[0]);
  return groebner(A.base(), gens);
}

/// Reduced Groebner basis over Q of J + I.
template <class K>
std::vector<Poly<K>> ideal_basis(const QuotientRing<K>& A, const std::vector<Poly<K>>& J) {
  std::vector<Poly<K>> g = A.relations();
  for (const auto& f : J)
    if (!f.is_zero()) g.push_back(f);
  return groebner(A.base(), g);
}

template <class K>
bool ideals_equal(const QuotientRing<K>& A, const std::vector<Poly<K>>& J1, const std::vector<Poly<K>>& J2) {
  return ideal_basis(A, J1) == ideal_basis(A, J2);
}

template <class K>
bool ideal_contains(const QuotientRing<K>& A, const std::vector<Poly<K>>& J, const Poly<K>& f) {
  return normal_form(A.base(), f, ideal_basis(A, J)).is_zero();
}

/// dim_k (Q / basis)_d for a Groebner basis.
template <class K>
long ideal_hilbert_function(const PolyRing<K>& Q, const std::vector<Poly<K>>& basis, int d) {
  long n = 0;
  for_each_monomial(Q, d, [&](const Monomial& m) {
    for (const auto& g : basis)
      if (PolyRing<K>::divides(g.lead().mono, m)) return;
    ++n;
  });
  return n;
}

template <class K>
int ideal_krull_dimension(const PolyRing<K>& Q, const std::vector<Poly<K>>& basis) {
  std::vector<Monomial> lts;
  for (const auto& g : basis) lts.push_back(g.lead().mono);
  return monomial_ideal_dimension(Q, lts);
}

/// ann_A(M) as a reduced Groebner basis over Q (containing I).
template <class K>
std::vector<Poly<K>> annihilator(const ModulePresentation<K>& p) {
  const QuotientRing<K>& A = *p.ring;
  const int n = p.num_generators();
  if (n == 0) return {A.base().one()};
  // a -> (a e_1, ..., a e_n) in the sum of n copies of M, copy i twisted by -deg e_i
  FreeModule target;
  for (int i = 0; i < n; ++i)
    for (int d : p.generators.degrees) target.degrees.push_back(d - p.generators.degrees[i]);
  Matrix<K> D(n * n, 1);
  for (int i = 0; i < n; ++i) D(i * n + i, 0) = A.base().one();
  Matrix<K> P = identity_kron(n, p.relations);
  ElimSolver<K> s(A, D, target, FreeModule::uniform(1, 0), P.cols > 0 ? P : Matrix<K>(n * n, 0));
  std::vector<Poly<K>> gens = A.relations();
  for (auto& c : s.kernel()) gens.push_back(c[0]);
  return groebner(A.base(), gens);
}

/// Whether f_1..f_r is a regular sequence on A: each f_i is a nonzerodivisor on
/// A/(f_1..f_{i-1}) and the final quotient is nonzero.
template <class K>
bool is_regular_sequence(const QuotientRing<K>& A, const std::vector<Poly<K>>& f) {
  std::vector<Poly<K>> J;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Poly<K> g = A.reduce(f[i]);
    if (!A.base().is_homogeneous(f[i])) throw InputError("sequence element " + std::to_string(i) + " is not homogeneous");
    if (g.is_zero() || A.base().degree(f[i]) == 0) return false;
    auto before = ideal_basis(A, J);
    if (before.size() == 1 && A.base().is_constant(before[0])) return false;
    if (colon(A, J, g) != before) return false;
    J.push_back(g);
  }
  return true;
}

/// Hilbert function of A/(f) against the prediction HS(A) * prod (1 - z^deg f_i)
/// for degrees 0..bound; true when they agree.
template <class K>
bool hilbert_series_matches_ci(const QuotientRing<K>& A, const std::vector<Poly<K>>& f, int bound) {
  std::vector<long> series(bound + 1);
  for (int d = 0; d <= bound; ++d) series[d] = A.hilbert_function(d);
  for (const auto& g : f) {
    const int a = A.base().degree(g);
    for (int d = bound; d >= a; --d) series[d] -= series[d - a];
  }
  auto basis = ideal_basis(A, f);
  for (int d = 0; d <= bound; ++d)
    if (ideal_hilbert_function(A.base(), basis, d) != series[d]) return false;
  return true;
}

}  // namespace cmperiodica
