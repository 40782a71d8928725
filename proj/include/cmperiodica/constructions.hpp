#pragma once

// Periodic complexes: the rank 1, 2, 3 constructions, circularization of a
// complex isomorphic to its double shift, the 2^d complex over a regular ring,
// and the verification bundle.

#include <string>
#include <vector>

#include "cmperiodica/complex.hpp"
#include "cmperiodica/eisenbud.hpp"
#include "cmperiodica/homology.hpp"
#include "cmperiodica/module_ops.hpp"
#include "cmperiodica/resolution.hpp"

namespace cmperiodica {

template <class K>
void require_regular(const QuotientRing<K>& A, const std::vector<Poly<K>>& x, const std::string& what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero() || !A.base().is_homogeneous(x[i]))
      throw PreconditionError(what + ": element " + std::to_string(i) + " must be nonzero and homogeneous");
    if (A.base().degree(x[i]) <= 0) throw PreconditionError(what + ": element " + std::to_string(i) + " is not in m");
  }
  if (!is_regular_sequence(A, x)) throw PreconditionError(what + " is not a regular sequence on A");
}

/// F^even = F^odd = A, d^even = 0, d^odd = x.
template <class K>
FreeComplex<K> construct_dim1(RingPtr<K> A, const Poly<K>& x) {
  require_regular(*A, {x}, "dim1 parameter");
  const Poly<K> xr = A->reduce(x);
  Matrix<K> zero(1, 1), mx(1, 1);
  mx(0, 0) = xr;
  return make_periodic(A, {FreeModule({0}), FreeModule({0})}, {zero, mx}, -A->base().degree(x));
}

/// X = A e_1 + A e_2 (even), Y = A f_1 + A f_2 (odd); d(e_j) = x_j p, d(f_j) = u_j q
/// with p = u_2 f_1 - u_1 f_2 and q = x_2 e_1 - x_1 e_2.
template <class K>
FreeComplex<K> construct_dim2(RingPtr<K> A, const std::vector<Poly<K>>& I, const std::vector<Poly<K>>& J) {
  if (I.size() != 2 || J.size() != 2) throw InputError("dim2 needs two elements in each of I and J");
  require_regular(*A, I, "I");
  require_regular(*A, J, "J");
  const PolyRing<K>& Q = A->base();
  const Poly<K> x1 = A->reduce(I[0]), x2 = A->reduce(I[1]), u1 = A->reduce(J[0]), u2 = A->reduce(J[1]);
  const int dx1 = Q.degree(I[0]), dx2 = Q.degree(I[1]), du1 = Q.degree(J[0]), du2 = Q.degree(J[1]);
  Matrix<K> d0(2, 2), d1(2, 2);
  const std::vector<Poly<K>> x = {x1, x2}, u = {u1, u2};
  for (int j = 0; j < 2; ++j) {
    d0(0, j) = A->mul(x[j], u2);
    d0(1, j) = Q.neg(A->mul(x[j], u1));
    d1(0, j) = A->mul(u[j], x2);
    d1(1, j) = Q.neg(A->mul(u[j], x1));
  }
  FreeModule X({dx1, dx2}), Y({-du2, -du1});
  return make_periodic(A, {X, Y}, {d0, d1}, -(dx1 + dx2 + du1 + du2));
}

/// Even differential: the Koszul map on (e_12, e_13, e_23); odd: f_j -> x_j p with
/// p = -x_3 e_1 + x_2 e_2 - x_1 e_3.
template <class K>
FreeComplex<K> construct_dim3(RingPtr<K> A, const std::vector<Poly<K>>& x) {
  if (x.size() != 3) throw InputError("dim3 needs three elements");
  require_regular(*A, x, "dim3 parameters");
  const PolyRing<K>& Q = A->base();
  std::vector<Poly<K>> xr;
  std::vector<int> w;
  for (const auto& e : x) {
    xr.push_back(A->reduce(e));
    w.push_back(Q.degree(e));
  }
  Matrix<K> d0 = koszul_matrix(*A, xr, 2);
  const std::vector<Poly<K>> p = {Q.neg(xr[2]), xr[1], Q.neg(xr[0])};
  Matrix<K> d1(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int r = 0; r < 3; ++r) d1(r, j) = A->mul(xr[j], p[r]);
  FreeModule E({w[0] + w[1], w[0] + w[2], w[1] + w[2]}), F({w[0], w[1], w[2]});
  return make_periodic(A, {E, F}, {d0, d1}, -(w[0] + w[1] + w[2]));
}

/// delta with deg(entry) = deg(src) - deg(tgt) - delta for every nonzero entry, if consistent.
template <class K>
std::optional<int> degree_offset(const QuotientRing<K>& A, const Matrix<K>& m, const FreeModule& src,
                                 const FreeModule& tgt) {
  std::optional<int> off;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) {
      const Poly<K>& e = m(r, c);
      if (e.is_zero()) continue;
      if (!A.base().is_homogeneous(e)) return std::nullopt;
      const int o = src.degrees[c] - tgt.degrees[r] - A.base().degree(e);
      if (off && *off != o) return std::nullopt;
      off = o;
    }
  return off ? off : std::optional<int>(0);
}

/// Inverse over A of a square homogeneous matrix, or nullopt.
template <class K>
std::optional<Matrix<K>> invert(const QuotientRing<K>& A, const Matrix<K>& m, const FreeModule& src,
                                const FreeModule& tgt) {
  if (m.rows != m.cols) return std::nullopt;
  auto off = degree_offset(A, m, src, tgt);
  if (!off) return std::nullopt;
  if (!dense_inverse(A.field(), constant_part(A, m))) return std::nullopt;
  const FreeModule t = tgt.twisted(*off);
  try {
    Matrix<K> inv = lift_through(A, m, src, t, identity_matrix(A, m.rows));
    if (first_nonzero(A, sub(A, mul(A, inv, m), identity_matrix(A, m.cols)))) return std::nullopt;
    return inv;
  } catch (const MathError&) {
    return std::nullopt;
  }
}

/// From psi: F -> F[2] with components psi_0, psi_1, the strictly periodic
/// G: Y = F^1 --v--> X = F^2 --u--> Y with v = d^1 and u = d^0 psi_0^{-1};
/// G^1 = Y, G^2 = X.
template <class K>
FreeComplex<K> circularize(const FreeComplex<K>& F, const ChainMap<K>& psi) {
  const QuotientRing<K>& A = *F.ring;
  if (psi.shift != 2) throw InputError("psi must map F to F[2] (shift 2)");
  for (int i : {0, 1})
    if (!psi.components.count(i)) throw InputError("psi is missing component " + std::to_string(i));
  for (int i = 0; i <= 3; ++i)
    if (!F.is_periodic() && !F.in_window(i)) throw InputError("F must contain F^0..F^3");
  // squares psi_{i+1} d^i = d^{i+2} psi_i
  for (const auto& [i, m] : psi.components) {
    if (m.rows != F.rank(i + 2) || m.cols != F.rank(i))
      throw InputError("psi_" + std::to_string(i) + " has the wrong shape");
    auto next = psi.components.find(i + 1);
    if (next == psi.components.end()) continue;
    if (first_nonzero(A, sub(A, mul(A, next->second, F.differential(i)), mul(A, F.differential(i + 2), m))))
      throw MathError("psi fails to commute with the differential at component " + std::to_string(i));
  }
  std::optional<Matrix<K>> inv0;
  for (const auto& [i, m] : psi.components) {
    auto inv = invert(A, m, F.module(i), F.module(i + 2));
    if (!inv) throw MathError("psi_" + std::to_string(i) + " is not invertible");
    if (i == 0) inv0 = inv;
  }
  Matrix<K> v = F.differential(1);
  Matrix<K> u = mul(A, F.differential(0), *inv0);
  const FreeModule Y = F.module(1), X = F.module(2);
  auto off = degree_offset(A, u, X, Y);
  if (!off) throw MathError("u = d^0 psi_0^{-1} is not homogeneous");
  FreeComplex<K> G = make_periodic(F.ring, {Y, X}, {v, u}, *off);
  G.start = 1;
  return G;
}

template <class K>
struct VerificationBundle {
  FreeComplex<K> complex;
  std::vector<Check> checks;
  CohomologyReport<K> cohomology;
  std::optional<int> beta;
  bool red_alert = false;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.ok()) return &c;
    return nullptr;
  }
};

/// Complex, minimality, periodicity, cohomology, rank lemma, beta and, over a
/// polynomial ring of dimension 2..4, the lower bound beta >= dim.
template <class K>
VerificationBundle<K> verify_periodic_package(const FreeComplex<K>& F) {
  VerificationBundle<K> b;
  b.complex = F;
  Check c = check_complex(F);
  b.checks.push_back(c);
  if (!c.ok()) return b;
  b.checks.push_back(is_minimal(F) ? Check::passed("minimal")
                                   : Check::failed("minimal", "a differential has an entry outside m"));
  if (F.is_periodic())
    b.checks.push_back(Check::passed("periodic", "period " + std::to_string(*F.period) + ", twist " +
                                                     std::to_string(F.twist)));
  else
    b.checks.push_back(Check::failed("periodic", "complex has no declared period"));
  b.cohomology = cohomology_report(F);
  {
    Check fl = Check::passed("finite length cohomology");
    for (const auto& e : b.cohomology.entries)
      if (!e.finite_length) {
        fl = Check::failed("finite length cohomology", "H^" + std::to_string(e.index) + " has infinite length");
        break;
      }
    b.checks.push_back(fl);
  }
  if (F.is_periodic()) {
    Check rk = check_rank_lemma(F, b.cohomology.all_finite_length());
    b.checks.push_back(rk);
    bool constant = true;
    for (const auto& m : F.modules) constant = constant && m.rank() == F.modules.front().rank();
    if (constant) b.beta = beta_of_periodic(F);
  }
  const QuotientRing<K>& A = *F.ring;
  const int dim = A.krull_dimension();
  bool nonzero = false;
  for (const auto& m : F.modules) nonzero = nonzero || m.rank() > 0;
  if (A.is_polynomial_ring() && dim >= 2 && dim <= 4 && b.beta && nonzero) {
    const bool others_ok = b.ok();
    if (others_ok && *b.beta < dim) {
      b.red_alert = true;
      b.checks.push_back(Check::failed("beta >= dim A", "RED ALERT: verified complex with beta " +
                                                            std::to_string(*b.beta) + " < " + std::to_string(dim)));
    } else if (others_ok) {
      b.checks.push_back(Check::passed("beta >= dim A", std::to_string(*b.beta) + " >= " + std::to_string(dim)));
    }
  }
  return b;
}

// ---------------------------------------------------------------- the 2^d complex

template <class K>
struct TwoToTheD {
  FreeComplex<K> complex;  // over A
  FreeComplex<K> over_B;   // the circular complex over B = A[Y]/(Y^2)
  RingPtr<K> B;
  std::vector<long> betti_B;  // beta_i^B(k), i = 0..steps
  std::vector<long> betti_C;  // beta_i^C(k) over C = k[Y]/(Y^2), i = 0..d
  int split_index = 0;
  long binomial_sum = 0;
  std::vector<Check> checks;
  VerificationBundle<K> bundle;
};

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// A fresh variable name not used by the ring.
inline std::string fresh_name(const std::vector<Variable>& vars, std::string base) {
  auto used = [&](const std::string& n) {
    for (const auto& v : vars)
      if (v.name == n) return true;
    return false;
  };
  while (used(base)) base += "_";
  return base;
}

/// Resolves k over B = A[Y]/(Y^2), finds i >= d at which the Eisenbud operator
/// t: F_{j+2} -> F_j is invertible for j = i, i + 1, circularizes
/// F_{i+3} -> ... -> F_i with psi = t and tensors down to A.
template <class K>
TwoToTheD<K> construct_2d(RingPtr<K> A, int max_extra = 2) {
  if (!A->is_polynomial_ring()) throw PreconditionError("construct_2d needs a polynomial ring (no relations)");
  const PolyRing<K>& Qa = A->base();
  const int d = Qa.nvars();
  if (d < 1) throw PreconditionError("construct_2d needs at least one variable");
  TwoToTheD<K> out;
  std::vector<Variable> vars = Qa.variables();
  const std::string yname = fresh_name(vars, "Y");
  vars.push_back({yname, 1});
  PolyRing<K> Qb(Qa.field(), vars, Qa.order());
  out.B = make_ring<K>(Qb, {Qb.pow(Qb.var(d), 2)});
  const QuotientRing<K>& B = *out.B;

  Resolution<K> res;
  OperatorFamily<K> op;
  std::optional<Matrix<K>> inv_lo;
  int split = -1;
  for (int extra = 0; extra <= max_extra && split < 0; ++extra) {
    res = minimal_free_resolution(residue_field_module(out.B), d + 3 + extra);
    op = eisenbud_operators(res);
    for (int i = d; i + 3 <= res.steps(); ++i) {
      auto a = invert(B, op.t(0, i + 3), res.free(i + 3), res.free(i + 1));
      auto b = invert(B, op.t(0, i + 2), res.free(i + 2), res.free(i));
      if (a && b) {
        split = i;
        break;
      }
    }
  }
  out.betti_B = res.betti();
  if (split < 0) {
    std::string ranks;
    for (long r : out.betti_B) ranks += (ranks.empty() ? "" : ",") + std::to_string(r);
    throw MathError("periodic tail not detected: no invertible operator pair in the window; ranks " + ranks);
  }
  out.split_index = split;
  // E^j = F_{split+3-j}, d^j = d_{split+3-j}, psi_j = t on F_{split+3-j}
  std::vector<FreeModule> mods;
  std::vector<Matrix<K>> maps;
  for (int j = 0; j <= 3; ++j) mods.push_back(res.free(split + 3 - j));
  for (int j = 0; j < 3; ++j) maps.push_back(res.d(split + 3 - j));
  FreeComplex<K> E = make_window(out.B, 0, mods, maps);
  ChainMap<K> psi;
  psi.shift = 2;
  psi.components[0] = op.t(0, split + 3);
  psi.components[1] = op.t(0, split + 2);
  out.over_B = circularize(E, psi);

  // tensor with A: Y -> 0
  auto down = [&](const Poly<K>& p) {
    Poly<K> q = Qb.kill_variable(p, d);
    return Qa.normalize(std::move(q.terms));
  };
  FreeComplex<K> F = out.over_B;
  F.ring = A;
  for (auto& m : F.maps) m = map_entries<K>(m, down);
  out.complex = F;

  // beta_d^B(k) = sum_i binom(d, i) beta_i^C(k), C = k[Y]/(Y^2)
  {
    PolyRing<K> Qc(Qa.field(), {{yname, 1}}, Qa.order());
    auto C = make_ring<K>(Qc, {Qc.pow(Qc.var(0), 2)});
    out.betti_C = betti_numbers(residue_field_module(C), d);
    for (int i = 0; i <= d; ++i) out.binomial_sum += binomial(d, i) * out.betti_C[i];
    const long bd = out.betti_B[d];
    out.checks.push_back(bd == out.binomial_sum
                             ? Check::passed("binomial identity", "beta_d^B(k) = " + std::to_string(bd))
                             : Check::failed("binomial identity", "beta_d^B(k) = " + std::to_string(bd) + " but sum = " +
                                                                      std::to_string(out.binomial_sum)));
  }
  out.checks.push_back(check_complex(out.over_B));
  out.bundle = verify_periodic_package(out.complex);
  const long expect = 1L << d;
  out.checks.push_back(out.bundle.beta && *out.bundle.beta == expect
                           ? Check::passed("beta = 2^d", std::to_string(expect))
                           : Check::failed("beta = 2^d", "beta " + (out.bundle.beta ? std::to_string(*out.bundle.beta)
                                                                                      : std::string("undefined"))));
  return out;
}

}  // namespace cmperiodica
