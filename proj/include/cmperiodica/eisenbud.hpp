#pragma once

// Eisenbud operators over a complete intersection A = Q/(f_1..f_c), the induced
// action on Ext, filter-regular elements and the slice construction.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmperiodica/growth.hpp"
#include "cmperiodica/linalg.hpp"
#include "cmperiodica/module_ops.hpp"
#include "cmperiodica/resolution.hpp"

namespace cmperiodica {

/// The relations of A as a regular sequence in the polynomial ring Q.
template <class K>
Check check_complete_intersection(const QuotientRing<K>& A) {
  QuotientRing<K> Q(A.base(), {});
  if (!is_regular_sequence(Q, A.relations()))
    return Check::failed("complete intersection", "the relations of A are not a regular sequence");
  return Check::passed("complete intersection", "codimension " + std::to_string(A.relations().size()));
}

/// Writes upper * lower (over Q) as sum_j f_j T_j; throws on a nonzero remainder.
template <class K>
std::vector<Matrix<K>> decompose_square(const QuotientRing<K>& A, const Divider<K>& div, const Matrix<K>& upper,
                                        const Matrix<K>& lower, const std::string& where) {
  const PolyRing<K>& Q = A.base();
  const int c = static_cast<int>(A.relations().size());
  Matrix<K> sq = mul_lifted(Q, upper, lower);
  std::vector<Matrix<K>> T(c, Matrix<K>(sq.rows, sq.cols));
  for (int r = 0; r < sq.rows; ++r)
    for (int s = 0; s < sq.cols; ++s) {
      if (sq(r, s).is_zero()) continue;
      DivisionResult<K> d = div.divide(sq(r, s));
      if (!d.remainder.is_zero())
        throw ConsistencyError("lifted square " + where + " entry (" + std::to_string(r) + "," + std::to_string(s) +
                               ") is not in the ideal: the input is not a complex over A");
      for (int j = 0; j < c; ++j) T[j](r, s) = d.quotients[j];
    }
  return T;
}

/// Operators t_j on F_0 <- ... <- F_n; component i maps F_i -> F_{i-2}.
template <class K>
struct OperatorFamily {
  Resolution<K> res;
  // lifted[j].at(i) = t~_j on F_i over Q, operators[j].at(i) = t_j mod I, for 2 <= i <= n
  std::vector<std::map<int, Matrix<K>>> lifted;
  std::vector<std::map<int, Matrix<K>>> operators;

  int codim() const { return static_cast<int>(operators.size()); }
  int steps() const { return res.steps(); }
  const Matrix<K>& t(int j, int i) const { return operators.at(j).at(i); }
  /// Internal degree of t_j: deg f_j.
  int degree(int j) const { return res.ring->base().degree(res.ring->relations()[j]); }
};

/// Lifts with normal-form entries, decomposes d~_{i-1} d~_i = sum f_j t~_j.
template <class K>
OperatorFamily<K> eisenbud_operators(const Resolution<K>& res) {
  const QuotientRing<K>& A = *res.ring;
  OperatorFamily<K> op;
  op.res = res;
  const int c = static_cast<int>(A.relations().size());
  op.lifted.resize(c);
  op.operators.resize(c);
  if (c == 0) return op;
  Divider<K> div(A.base(), A.relations());
  for (int i = 2; i <= res.steps(); ++i) {
    auto T = decompose_square(A, div, reduce(A, res.d(i - 1)), reduce(A, res.d(i)), "d_" + std::to_string(i - 1) + " d_" + std::to_string(i));
    for (int j = 0; j < c; ++j) {
      op.operators[j][i] = reduce(A, T[j]);
      op.lifted[j][i] = std::move(T[j]);
    }
  }
  return op;
}

/// d~_{i-1} d~_i = sum_j f_j t~_j exactly over Q.
template <class K>
Check check_operator_identity(const OperatorFamily<K>& op) {
  const QuotientRing<K>& A = *op.res.ring;
  const PolyRing<K>& Q = A.base();
  for (int i = 2; i <= op.steps(); ++i) {
    Matrix<K> lhs = mul_lifted(Q, reduce(A, op.res.d(i - 1)), reduce(A, op.res.d(i)));
    for (int j = 0; j < op.codim(); ++j) {
      Matrix<K> fj = op.lifted[j].at(i);
      for (auto& e : fj.entries) e = Q.mul(e, A.relations()[j]);
      lhs = sub(A, lhs, fj);
    }
    if (!lhs.is_zero()) return Check::failed("lifted identity", "fails on F_" + std::to_string(i));
  }
  return Check::passed("lifted identity", "F_2..F_" + std::to_string(op.steps()));
}

/// d t_j = t_j d over A on the window interior.
template <class K>
Check check_operator_commutation(const OperatorFamily<K>& op) {
  const QuotientRing<K>& A = *op.res.ring;
  for (int j = 0; j < op.codim(); ++j)
    for (int i = 3; i <= op.steps(); ++i) {
      // F_i -> F_{i-3}: d_{i-2} t_j(i) versus t_j(i-1) d_i
      Matrix<K> lhs = mul(A, op.res.d(i - 2), op.t(j, i));
      Matrix<K> rhs = mul(A, op.t(j, i - 1), op.res.d(i));
      if (first_nonzero(A, sub(A, lhs, rhs)))
        return Check::failed("chain maps", "t_" + std::to_string(j + 1) + " fails to commute at F_" + std::to_string(i));
    }
  return Check::passed("chain maps");
}

// ---------------------------------------------------------------- Ext windows

/// C^n = Ext^n(M, V) (x) k for n <= bound, with the action of each t_j as
/// matrices C^n -> C^{n+2}.
template <class K>
struct ExtWindow {
  int bound = 0;
  int codim = 0;
  std::vector<int> op_degrees;  // internal degree of t_j
  std::vector<long> dims;       // mu(Ext^n) = dim C^n
  // action[j][n]: dims[n+2] x dims[n], for n + 2 <= bound
  std::vector<std::vector<DenseMatrix<K>>> action;
  K field;

  explicit ExtWindow(K k = K()) : field(std::move(k)) {}
};

/// The V = k case: Hom(F, k) has zero differential and t_j acts by the transpose
/// of its constant part.
template <class K>
ExtWindow<K> ext_window_residue(const OperatorFamily<K>& op, int bound) {
  if (bound > op.steps()) throw InputError("bound " + std::to_string(bound) + " exceeds the resolution window " +
                                           std::to_string(op.steps()));
  const QuotientRing<K>& A = *op.res.ring;
  ExtWindow<K> E(A.field());
  E.bound = bound;
  E.codim = op.codim();
  for (int j = 0; j < op.codim(); ++j) E.op_degrees.push_back(op.degree(j));
  for (int n = 0; n <= bound; ++n) E.dims.push_back(op.res.rank(n));
  E.action.resize(op.codim());
  for (int j = 0; j < op.codim(); ++j)
    for (int n = 0; n + 2 <= bound; ++n) E.action[j].push_back(dense_transpose(A.field(), constant_part(A, op.t(j, n + 2))));
  return E;
}

/// Hom(F_n, V) = V^{rank F_n} presented on the free cover, block of e_s major.
template <class K>
struct HomTerm {
  FreeModule cover;     // degrees b_l - a_s
  Matrix<K> relations;  // block diagonal copies of the relations of V
};

template <class K>
HomTerm<K> hom_term(const FreeModule& Fn, const ModulePresentation<K>& V) {
  HomTerm<K> h;
  for (int s = 0; s < Fn.rank(); ++s)
    for (int b : V.generators.degrees) h.cover.degrees.push_back(b - Fn.degrees[s]);
  h.relations = identity_kron(Fn.rank(), V.relations);
  if (h.relations.rows != h.cover.rank()) h.relations = Matrix<K>(h.cover.rank(), 0);
  return h;
}

/// Ext^n(M, V) tensor k and the t-action, computed from Hom(F, V).
template <class K>
ExtWindow<K> ext_window(const OperatorFamily<K>& op, const ModulePresentation<K>& V, int bound) {
  if (bound + 1 > op.steps())
    throw InputError("bound " + std::to_string(bound) + " needs a resolution of length " + std::to_string(bound + 1) +
                     ", have " + std::to_string(op.steps()));
  const RingPtr<K>& Ap = op.res.ring;
  const QuotientRing<K>& A = *Ap;
  const K& k = A.field();
  const int g = V.num_generators();
  ExtWindow<K> E(k);
  E.bound = bound;
  E.codim = op.codim();
  for (int j = 0; j < op.codim(); ++j) E.op_degrees.push_back(op.degree(j));

  struct Level {
    HomTerm<K> hom;
    GeneratorSet<K> cycles;  // generators of Z^n inside the cover
    Matrix<K> bound_rel;     // B^n plus relations of V^{rank F_n}
    std::optional<ElimSolver<K>> solver;
    DenseMatrix<K> proj, lift;
  };
  std::vector<Level> lv(bound + 1);
  auto hom_map = [&](int n) {  // Hom(d_{n+1}): Hom(F_n, V) -> Hom(F_{n+1}, V)
    return kron_identity(transpose(op.res.d(n + 1)), g);
  };
  for (int n = 0; n <= bound; ++n) {
    Level& L = lv[n];
    L.hom = hom_term(op.res.free(n), V);
    const HomTerm<K> next = hom_term(op.res.free(n + 1), V);
    const int z = L.hom.cover.rank();
    if (z == 0) {
      E.dims.push_back(0);
      continue;
    }
    ElimSolver<K> zs(A, hom_map(n), next.cover, L.hom.cover, next.relations);
    L.cycles = minimal_generators(A, zs.kernel(), L.hom.cover);
    L.bound_rel = n >= 1 ? hcat(hom_map(n - 1), L.hom.relations) : L.hom.relations;
    const int m = L.cycles.degrees.rank();
    if (m == 0) {
      E.dims.push_back(0);
      continue;
    }
    L.solver.emplace(A, from_columns<K>(z, L.cycles.columns), L.hom.cover, L.cycles.degrees,
                     L.bound_rel.cols > 0 ? L.bound_rel : Matrix<K>(z, 0));
    // relations among the cycle generators modulo boundaries, then tensor with k
    DenseMatrix<K> rel = constant_part(A, from_columns<K>(m, L.solver->kernel()));
    if (rel.cols == 0) rel = DenseMatrix<K>(k, m, 0);
    auto [proj, lift] = quotient_space(k, rel, m);
    L.proj = proj;
    L.lift = lift;
    E.dims.push_back(proj.rows);
  }
  E.action.resize(op.codim());
  for (int j = 0; j < op.codim(); ++j)
    for (int n = 0; n + 2 <= bound; ++n) {
      DenseMatrix<K> act(k, static_cast<int>(E.dims[n + 2]), static_cast<int>(E.dims[n]));
      if (E.dims[n] > 0 && E.dims[n + 2] > 0) {
        const Matrix<K> tT = kron_identity(transpose(op.t(j, n + 2)), g);
        const Level& L = lv[n];
        const Level& T = lv[n + 2];
        for (int b = 0; b < E.dims[n]; ++b) {
          // representative cycle: sum_i lift(i, b) * z_i
          Column<K> cyc(L.hom.cover.rank());
          for (int i = 0; i < L.lift.rows; ++i) {
            if (k.is_zero(L.lift(i, b))) continue;
            for (int r = 0; r < L.hom.cover.rank(); ++r)
              cyc[r] = A.base().add(cyc[r], A.base().scale(L.cycles.columns[i][r], L.lift(i, b)));
          }
          Column<K> img = reduce_column(A, mul(A, tT, from_columns<K>(L.hom.cover.rank(), {cyc})).column(0));
          if (column_is_zero(img)) continue;
          auto coeff = T.solver->lift(img);
          if (!coeff) throw ConsistencyError("t_" + std::to_string(j + 1) + " image is not a cycle");
          DenseMatrix<K> cvec(k, T.lift.rows, 1);
          for (int i = 0; i < T.lift.rows; ++i) cvec(i, 0) = A.base().constant_term((*coeff)[i]);
          DenseMatrix<K> pv = dense_mul(k, T.proj, cvec);
          for (int r = 0; r < pv.rows; ++r) act(r, b) = pv(r, 0);
        }
      }
      E.action[j].push_back(act);
    }
  return E;
}

/// Matrix of the monomial t^alpha from C^n to C^{n + 2|alpha|}, or nullopt past the window.
template <class K>
std::optional<DenseMatrix<K>> monomial_action(const ExtWindow<K>& E, const std::vector<int>& alpha, int n) {
  DenseMatrix<K> m = dense_identity(E.field, static_cast<int>(E.dims[n]));
  int cur = n;
  for (int j = 0; j < E.codim; ++j)
    for (int e = 0; e < alpha[j]; ++e) {
      if (cur + 2 > E.bound) return std::nullopt;
      m = dense_mul(E.field, E.action[j][cur], m);
      cur += 2;
    }
  return m;
}

/// t_i t_j = t_j t_i on C^n for every n in the window.
template <class K>
Check check_ext_commutation(const ExtWindow<K>& E) {
  for (int i = 0; i < E.codim; ++i)
    for (int j = i + 1; j < E.codim; ++j)
      for (int n = 0; n + 4 <= E.bound; ++n) {
        auto a = dense_mul(E.field, E.action[i][n + 2], E.action[j][n]);
        auto b = dense_mul(E.field, E.action[j][n + 2], E.action[i][n]);
        if (!(a == b))
          return Check::failed("Ext commutation", "t_" + std::to_string(i + 1) + " t_" + std::to_string(j + 1) +
                                                     " differs on C^" + std::to_string(n));
      }
  return Check::passed("Ext commutation", "n <= " + std::to_string(E.bound));
}

/// A polynomial in t_1..t_c of degree s in the operators: sum_alpha c_alpha t^alpha.
template <class K>
struct OperatorPolynomial {
  int s = 1;
  std::vector<std::pair<std::vector<int>, typename K::Elem>> terms;
};

template <class K>
std::string to_string(const OperatorPolynomial<K>& p, const K& k) {
  std::string out;
  for (const auto& [alpha, c] : p.terms) {
    if (k.is_zero(c)) continue;
    std::string mono;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] > 0) {
        if (!mono.empty()) mono += "*";
        mono += "t" + std::to_string(j + 1);
        if (alpha[j] > 1) mono += "^" + std::to_string(alpha[j]);
      }
    std::string cs = k.to_string(c);
    std::string term = k.is_one(c) ? mono : cs + "*" + mono;
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out.empty() ? "0" : out;
}

/// Matrices of an operator polynomial C^n -> C^{n+2s}, for n + 2s <= bound.
template <class K>
std::vector<DenseMatrix<K>> polynomial_action(const ExtWindow<K>& E, const OperatorPolynomial<K>& p) {
  std::vector<DenseMatrix<K>> out;
  for (int n = 0; n + 2 * p.s <= E.bound; ++n) {
    DenseMatrix<K> m(E.field, static_cast<int>(E.dims[n + 2 * p.s]), static_cast<int>(E.dims[n]));
    for (const auto& [alpha, c] : p.terms) {
      auto a = monomial_action(E, alpha, n);
      if (a) m = dense_add(E.field, m, *a, c);
    }
    out.push_back(m);
  }
  return out;
}

template <class K>
struct FilterRegular {
  OperatorPolynomial<K> element;
  int n0 = 0;
  std::vector<long> kernel_dims;  // dim ker on C^n for n + 2s <= bound
  int candidates_tried = 0;
  std::string caveat;
};

/// Exponent vectors of total degree s over c variables, lexicographically descending.
inline std::vector<std::vector<int>> exponent_vectors(int c, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(c, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == c - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = a;
      rec(i + 1, left - a);
    }
  };
  if (c > 0) rec(0, s);
  return out;
}

/// Deterministic search for t of degree 2s with ker(t) zero on C^n for n >= n0,
/// accepting n0 <= (window)/2. Operators of different internal degree are never
/// mixed, so the element stays homogeneous.
template <class K>
FilterRegular<K> filter_regular_element(const ExtWindow<K>& E, int max_s = 2, int coeff_range = 3) {
  FilterRegular<K> best;
  const K& k = E.field;
  int tried = 0;
  for (int s = 1; s <= max_s; ++s) {
    const int last = E.bound - 2 * s;  // last n with C^{n+2s} in the window
    if (last < 1) break;
    auto monos = exponent_vectors(E.codim, s);
    // group monomials by internal degree
    std::map<int, std::vector<std::vector<int>>> groups;
    for (const auto& a : monos) {
      int deg = 0;
      for (int j = 0; j < E.codim; ++j) deg += a[j] * E.op_degrees[j];
      groups[deg].push_back(a);
    }
    for (const auto& [deg, group] : groups) {
      const int m = static_cast<int>(group.size());
      // coefficient tuples by increasing max entry, then lexicographically descending
      for (int top = 1; top <= coeff_range; ++top) {
        std::vector<int> lam(m, 0);
        std::function<bool(int)> rec = [&](int i) -> bool {
          if (i == m) {
            if (*std::max_element(lam.begin(), lam.end()) != top) return false;
            OperatorPolynomial<K> p;
            p.s = s;
            for (int t = 0; t < m; ++t)
              if (lam[t] != 0) p.terms.push_back({group[t], k.nth_element(static_cast<std::uint64_t>(lam[t]))});
            ++tried;
            auto mats = polynomial_action(E, p);
            std::vector<long> ker;
            for (const auto& x : mats) ker.push_back(x.cols - dense_rank(k, x));
            int n0 = static_cast<int>(ker.size());
            while (n0 > 0 && ker[n0 - 1] == 0) --n0;
            if (n0 <= last / 2 && static_cast<int>(ker.size()) - n0 >= 2) {
              best.element = p;
              best.n0 = n0;
              best.kernel_dims = ker;
              best.candidates_tried = tried;
              best.caveat = "kernel vanishing observed for " + std::to_string(n0) + " <= n <= " + std::to_string(last) +
                            " only";
              return true;
            }
            return false;
          }
          for (int v = top; v >= 0; --v) {
            lam[i] = v;
            if (rec(i + 1)) return true;
          }
          return false;
        };
        if (rec(0)) return best;
      }
    }
  }
  throw MathError("no filter-regular element found after " + std::to_string(tried) + " candidates within the window " +
                  std::to_string(E.bound));
}

// ---------------------------------------------------------------- slice

template <class K>
struct SliceCertificate {
  int n0 = 0;
  int s = 1;
  std::string element;  // the operator polynomial
  int bound = 0;
  std::map<int, Matrix<K>> xi;  // xi_i: F_i -> F_{i-2s}
  std::vector<Check> checks;
  ModulePresentation<K> kernel;  // K = ker(alpha), minimal presentation
  ShortExactSequence<K> sequence;
  SesReport<K> sequence_report;
  std::vector<long> betti_M, betti_K;
  GrowthEstimate cx_M, cx_K;
  std::string caveat;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return sequence_report.ok();
  }
};

/// The chain map of an operator polynomial on the resolution: F_i -> F_{i-2s}.
template <class K>
std::map<int, Matrix<K>> operator_chain_map(const OperatorFamily<K>& op, const OperatorPolynomial<K>& p) {
  const QuotientRing<K>& A = *op.res.ring;
  std::map<int, Matrix<K>> out;
  for (int i = 2 * p.s; i <= op.steps(); ++i) {
    Matrix<K> sum(op.res.rank(i - 2 * p.s), op.res.rank(i));
    for (const auto& [alpha, c] : p.terms) {
      Matrix<K> m = identity_matrix(A, op.res.rank(i));
      int cur = i;
      for (int j = 0; j < op.codim(); ++j)
        for (int e = 0; e < alpha[j]; ++e) {
          m = mul(A, op.t(j, cur), m);
          cur -= 2;
        }
      sum = add(A, sum, scale(A, m, c));
    }
    out[i] = reduce(A, sum);
  }
  return out;
}

/// Surjection alpha: Omega^{n0+2s} M -> Omega^{n0} M from a filter-regular
/// operator, with K = ker alpha and its certificate.
template <class K>
SliceCertificate<K> slice(const ModulePresentation<K>& M, int bound) {
  const QuotientRing<K>& A = *M.ring;
  Check ci = check_complete_intersection(A);
  if (!ci.ok()) throw PreconditionError("slice requires a complete intersection: " + ci.detail);
  const int steps = std::max(bound, kMinGrowthWindow - 1) + 1;
  Resolution<K> res = minimal_free_resolution(M, steps);
  SliceCertificate<K> cert;
  cert.bound = bound;
  cert.betti_M = res.betti();
  cert.cx_M = complexity_estimate(cert.betti_M);
  if (!cert.cx_M.complexity || *cert.cx_M.complexity < 2)
    throw PreconditionError("slice requires complexity >= 2 (estimated " + cert.cx_M.complexity_string() + ")");
  OperatorFamily<K> op = eisenbud_operators(res);
  ExtWindow<K> E = ext_window_residue(op, std::min(bound, steps));
  FilterRegular<K> fr = filter_regular_element(E);
  cert.n0 = fr.n0;
  cert.s = fr.element.s;
  cert.element = to_string(fr.element, A.field());
  cert.caveat = fr.caveat;
  cert.xi = operator_chain_map(op, fr.element);
  const int n0 = cert.n0, s = cert.s;
  const K& k = A.field();

  // Tor_n(xi, k): Tor_{n+2s} -> Tor_n surjective
  {
    Check c = Check::passed("Tor surjectivity", "n0 = " + std::to_string(n0) + " <= n <= " + std::to_string(bound - 2 * s));
    for (int n = n0; n + 2 * s <= bound; ++n)
      if (dense_rank(k, constant_part(A, cert.xi.at(n + 2 * s))) != res.rank(n)) {
        c = Check::failed("Tor surjectivity", "fails at n = " + std::to_string(n));
        break;
      }
    cert.checks.push_back(c);
  }

  // alpha: coker d_{n0+2s+1} -> coker d_{n0+1} induced by xi_{n0+2s}
  const int hi = n0 + 2 * s;
  int e = 0;  // internal degree of the operator
  for (int j = 0; j < op.codim(); ++j) e += fr.element.terms.front().first[j] * op.degree(j);
  const Matrix<K>& xi = cert.xi.at(hi);
  FreeModule top = res.free(hi), low = res.free(n0).twisted(e);
  ModulePresentation<K> Mhi(M.ring, top, res.d(hi + 1));
  ModulePresentation<K> Mlo(M.ring, low, res.d(n0 + 1));
  ElimSolver<K> ker(A, xi, low, top, Mlo.relations);
  GeneratorSet<K> G = minimal_generators(A, ker.kernel(), top);
  // K on the generators G, relations = preimage of im d_{hi+1}
  ElimSolver<K> rel(A, from_columns<K>(top.rank(), G.columns), top, G.degrees,
                    Mhi.relations.cols > 0 ? Mhi.relations : Matrix<K>(top.rank(), 0));
  auto relg = minimal_generators(A, rel.kernel(), G.degrees);
  ModulePresentation<K> Kraw(M.ring, G.degrees, from_columns<K>(G.degrees.rank(), relg.columns));
  cert.kernel = minimize(Kraw);
  cert.sequence = ShortExactSequence<K>{Kraw, Mhi, Mlo, from_columns<K>(top.rank(), G.columns), xi};
  const int window = std::max(bound - hi, kMinGrowthWindow - 1);
  cert.sequence_report = verify_short_exact_tor(cert.sequence, std::min(window, bound));
  cert.betti_K = betti_numbers(cert.kernel, window);
  cert.cx_K = complexity_estimate(cert.betti_K);
  {
    const std::string name = "cx K = cx M - 1";
    if (cert.cx_K.complexity && *cert.cx_K.complexity + 1 == *cert.cx_M.complexity)
      cert.checks.push_back(Check::passed(name, "cx K = " + cert.cx_K.complexity_string()));
    else
      cert.checks.push_back(Check::failed(name, "cx K = " + cert.cx_K.complexity_string() + ", cx M = " +
                                                    cert.cx_M.complexity_string()));
  }
  return cert;
}

}  // namespace cmperiodica
