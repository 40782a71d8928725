#pragma once

// Buchberger's algorithm for homogeneous submodules of graded free modules over
// a polynomial ring, with block (elimination) module orders.

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cmperiodica/error.hpp"
#include "cmperiodica/polynomial.hpp"

namespace cmperiodica {

template <class K>
struct MTerm {
  Monomial mono;
  int comp = 0;
  typename K::Elem coeff;
  friend bool operator==(const MTerm&, const MTerm&) = default;
};

/// A module element as a term list, strictly decreasing in a ModuleOrder.
template <class K>
using MVec = std::vector<MTerm<K>>;

/// Order on terms x^a e_i of a graded free module.
///
/// Terms compare by elimination block first (lower block is larger), then by
/// degree deg(x^a) + shift[i], then by monomial, then by smaller component.
struct ModuleOrder {
  std::vector<int> shift;
  std::vector<int> block;

  ModuleOrder() = default;
  explicit ModuleOrder(std::vector<int> shifts)
      : shift(std::move(shifts)), block(shift.size(), 0) {}
  ModuleOrder(std::vector<int> shifts, std::vector<int> blocks)
      : shift(std::move(shifts)), block(std::move(blocks)) {}

  int rank() const { return static_cast<int>(shift.size()); }
};

template <class K>
class ModuleArith {
 public:
  using Elem = typename K::Elem;
  using V = MVec<K>;

  ModuleArith(const PolyRing<K>& ring, const ModuleOrder& order) : ring_(&ring), order_(&order) {}

  const PolyRing<K>& ring() const { return *ring_; }
  const ModuleOrder& order() const { return *order_; }

  int degree(const MTerm<K>& t) const { return t.mono.deg + order_->shift[t.comp]; }
  int degree(const V& v) const { return v.empty() ? INT_MIN : degree(v.front()); }

  int compare(const MTerm<K>& a, const MTerm<K>& b) const {
    const int ba = order_->block[a.comp], bb = order_->block[b.comp];
    if (ba != bb) return ba < bb ? 1 : -1;
    const int da = degree(a), db = degree(b);
    if (da != db) return da > db ? 1 : -1;
    const int c = ring_->compare(a.mono, b.mono);
    if (c != 0) return c;
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return 0;
  }

  bool is_homogeneous(const V& v) const {
    for (const auto& t : v)
      if (degree(t) != degree(v.front())) return false;
    return true;
  }

  V scale(const V& v, const Elem& c) const {
    V r = v;
    for (auto& t : r) t.coeff = ring_->field().mul(t.coeff, c);
    return r;
  }
  V make_monic(const V& v) const {
    if (v.empty()) return v;
    return scale(v, ring_->field().inv(v.front().coeff));
  }

  /// a + c * m * b, merging from a[from] onward.
  V axpy(const V& a, std::size_t from, const Elem& c, const Monomial& m, const V& b,
         std::size_t bfrom = 0) const {
    const K& k = ring_->field();
    V r;
    r.reserve(a.size() - from + b.size() - bfrom);
    std::size_t i = from, j = bfrom;
    auto scaled = [&](const MTerm<K>& t) {
      return MTerm<K>{PolyRing<K>::mono_mul(t.mono, m), t.comp, k.mul(c, t.coeff)};
    };
    while (i < a.size() && j < b.size()) {
      MTerm<K> bt = scaled(b[j]);
      int cmp = compare(a[i], bt);
      if (cmp > 0) {
        r.push_back(a[i++]);
      } else if (cmp < 0) {
        r.push_back(std::move(bt));
        ++j;
      } else {
        auto v = k.add(a[i].coeff, bt.coeff);
        if (!k.is_zero(v)) r.push_back({a[i].mono, a[i].comp, v});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(scaled(b[j]));
    return r;
  }
  V add(const V& a, const V& b) const { return axpy(a, 0, ring_->field().one(), Monomial{}, b); }
  V sub(const V& a, const V& b) const {
    return axpy(a, 0, ring_->field().neg(ring_->field().one()), Monomial{}, b);
  }

  V normalize(V terms) const {
    std::sort(terms.begin(), terms.end(),
              [&](const MTerm<K>& x, const MTerm<K>& y) { return compare(x, y) > 0; });
    V r;
    const K& k = ring_->field();
    for (auto& t : terms) {
      if (!r.empty() && r.back().comp == t.comp && r.back().mono == t.mono) {
        r.back().coeff = k.add(r.back().coeff, t.coeff);
        if (k.is_zero(r.back().coeff)) r.pop_back();
      } else if (!k.is_zero(t.coeff)) {
        r.push_back(std::move(t));
      }
    }
    return r;
  }

  /// Column of polynomials, placed at components offset, offset+1, ...
  V from_column(const std::vector<Poly<K>>& col, int offset = 0) const {
    V terms;
    for (std::size_t i = 0; i < col.size(); ++i)
      for (const auto& t : col[i].terms) terms.push_back({t.mono, offset + static_cast<int>(i), t.coeff});
    return normalize(std::move(terms));
  }
  /// Entries of components [offset, offset + n) as a column of polynomials.
  std::vector<Poly<K>> to_column(const V& v, int offset, int n) const {
    std::vector<std::vector<Term<K>>> parts(n);
    for (const auto& t : v)
      if (t.comp >= offset && t.comp < offset + n) parts[t.comp - offset].push_back({t.mono, t.coeff});
    std::vector<Poly<K>> col(n);
    for (int i = 0; i < n; ++i) col[i] = ring_->normalize(std::move(parts[i]));
    return col;
  }

 private:
  const PolyRing<K>* ring_;
  const ModuleOrder* order_;
};

/// Incremental Buchberger completion over a fixed ring and module order.
///
/// Elements whose leading term falls in a block >= drop_block are discarded
/// instead of being added to the basis; with drop_block = 1 this computes the
/// block-0 projection only (used for lifting without keeping syzygies).
template <class K>
class ModuleGroebner {
 public:
  using Elem = typename K::Elem;
  using V = MVec<K>;

  ModuleGroebner(const PolyRing<K>& ring, ModuleOrder order, int drop_block = INT_MAX)
      : ring_(ring), order_(std::move(order)), arith_(ring_, order_), drop_block_(drop_block),
        by_comp_(order_.rank()) {}

  ModuleGroebner(const ModuleGroebner& o)
      : ring_(o.ring_), order_(o.order_), arith_(ring_, order_), drop_block_(o.drop_block_),
        basis_(o.basis_), single_comp_(o.single_comp_), by_comp_(o.by_comp_), queue_(o.queue_),
        pending_pairs_(o.pending_pairs_), inputs_(o.inputs_), seq_(o.seq_), complete_to_(o.complete_to_) {}
  ModuleGroebner& operator=(const ModuleGroebner&) = delete;

  const PolyRing<K>& ring() const { return ring_; }
  const ModuleOrder& order() const { return order_; }
  const ModuleArith<K>& arith() const { return arith_; }

  /// Queues a homogeneous generator; it is reduced and inserted by complete().
  void add(V v) {
    if (v.empty()) return;
    if (!arith_.is_homogeneous(v)) throw InputError("inhomogeneous module element");
    const int d = arith_.degree(v);
    inputs_.push_back(std::move(v));
    queue_.insert(Item{d, seq_++, -1, static_cast<int>(inputs_.size()) - 1});
    if (d <= complete_to_) complete_to_ = d - 1;
  }

  /// Processes every queued input and S-pair of degree <= max_degree.
  void complete(int max_degree = INT_MAX) {
    while (!queue_.empty() && queue_.begin()->degree <= max_degree) {
      Item it = *queue_.begin();
      queue_.erase(queue_.begin());
      if (it.i < 0) {
        V h = reduce(std::move(inputs_[it.j]));
        inputs_[it.j].clear();
        insert(std::move(h));
      } else {
        pending_pairs_.erase({it.i, it.j});
        if (chain_criterion(it.i, it.j)) continue;
        insert(reduce(spoly(it.i, it.j)));
      }
    }
    complete_to_ = std::max(complete_to_, max_degree);
  }

  bool is_complete() const { return queue_.empty(); }
  int completed_degree() const { return queue_.empty() ? INT_MAX : complete_to_; }

  /// Full normal form with respect to the current basis.
  V reduce(V f) const {
    const K& k = ring_.field();
    V rem;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const MTerm<K>& lt = f[pos];
      const int r = find_reducer(lt);
      if (r < 0) {
        rem.push_back(lt);
        ++pos;
        continue;
      }
      const V& g = basis_[r];
      Monomial m = PolyRing<K>::mono_div(lt.mono, g.front().mono);
      Elem c = k.neg(k.div(lt.coeff, g.front().coeff));
      f = arith_.axpy(f, pos + 1, c, m, g, 1);
      pos = 0;
    }
    return rem;
  }

  /// Reduction that also records the multiplier of each basis element used.
  V reduce_recording(V f, std::vector<std::tuple<int, Monomial, Elem>>& steps) const {
    const K& k = ring_.field();
    V rem;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const MTerm<K>& lt = f[pos];
      const int r = find_reducer(lt);
      if (r < 0) {
        rem.push_back(lt);
        ++pos;
        continue;
      }
      const V& g = basis_[r];
      Monomial m = PolyRing<K>::mono_div(lt.mono, g.front().mono);
      Elem q = k.div(lt.coeff, g.front().coeff);
      steps.emplace_back(r, m, q);
      f = arith_.axpy(f, pos + 1, k.neg(q), m, g, 1);
      pos = 0;
    }
    return rem;
  }

  const std::vector<V>& basis() const { return basis_; }

  /// The unique reduced basis: minimal leading terms, tails reduced, monic,
  /// sorted by decreasing leading term.
  std::vector<V> reduced_basis() const {
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
      bool redundant = false;
      for (int j = 0; j < static_cast<int>(basis_.size()) && !redundant; ++j) {
        if (i == j) continue;
        const auto& a = basis_[j].front();
        const auto& b = basis_[i].front();
        if (a.comp != b.comp || !PolyRing<K>::divides(a.mono, b.mono)) continue;
        if (a.mono == b.mono && j > i) continue;  // equal leads: keep the earliest
        redundant = true;
      }
      if (!redundant) keep.push_back(i);
    }
    ModuleGroebner minimal(ring_, order_);
    for (int i : keep) minimal.push_basis(basis_[i]);
    std::vector<V> out;
    for (int i : keep) {
      const V& g = basis_[i];
      V tail(g.begin() + 1, g.end());
      V red = minimal.reduce(std::move(tail));
      V full;
      full.push_back(g.front());
      full.insert(full.end(), red.begin(), red.end());
      out.push_back(arith_.make_monic(full));
    }
    std::sort(out.begin(), out.end(),
              [&](const V& a, const V& b) { return arith_.compare(a.front(), b.front()) > 0; });
    return out;
  }

 private:
  struct Item {
    int degree;
    long seq;
    int i;  // -1 for an input
    int j;
    bool operator<(const Item& o) const { return std::tie(degree, seq) < std::tie(o.degree, o.seq); }
  };

  void push_basis(V g) {
    const int idx = static_cast<int>(basis_.size());
    by_comp_[g.front().comp].push_back(idx);
    bool single = true;
    for (const auto& t : g)
      if (t.comp != g.front().comp) single = false;
    single_comp_.push_back(single);
    basis_.push_back(std::move(g));
  }

  int find_reducer(const MTerm<K>& t) const {
    for (int idx : by_comp_[t.comp])
      if (PolyRing<K>::divides(basis_[idx].front().mono, t.mono)) return idx;
    return -1;
  }

  void insert(V h) {
    if (h.empty()) return;
    if (order_.block[h.front().comp] >= drop_block_) return;
    h = arith_.make_monic(h);
    const int n = static_cast<int>(basis_.size());
    const int comp = h.front().comp;
    push_basis(std::move(h));
    const auto& lt = basis_[n].front();
    for (int k : by_comp_[comp]) {
      if (k == n) continue;
      const auto& lk = basis_[k].front();
      // product criterion, valid when both live in a single component
      if (single_comp_[k] && single_comp_[n] && PolyRing<K>::coprime(lk.mono, lt.mono)) continue;
      Monomial l = ring_.lcm(lk.mono, lt.mono);
      const int d = l.deg + order_.shift[comp];
      queue_.insert(Item{d, seq_++, k, n});
      pending_pairs_.insert({k, n});
    }
  }

  bool pending(int a, int b) const {
    if (a > b) std::swap(a, b);
    return pending_pairs_.count({a, b}) != 0;
  }

  bool chain_criterion(int i, int j) const {
    const int comp = basis_[i].front().comp;
    Monomial l = ring_.lcm(basis_[i].front().mono, basis_[j].front().mono);
    for (int k : by_comp_[comp]) {
      if (k == i || k == j) continue;
      if (!PolyRing<K>::divides(basis_[k].front().mono, l)) continue;
      if (!pending(i, k) && !pending(j, k)) return true;
    }
    return false;
  }

  V spoly(int i, int j) const {
    const V& a = basis_[i];
    const V& b = basis_[j];
    Monomial l = ring_.lcm(a.front().mono, b.front().mono);
    Monomial ma = PolyRing<K>::mono_div(l, a.front().mono);
    Monomial mb = PolyRing<K>::mono_div(l, b.front().mono);
    const K& k = ring_.field();
    V sa = arith_.axpy(V{}, 0, k.one(), ma, a, 1);
    return arith_.axpy(sa, 0, k.neg(k.one()), mb, b, 1);
  }

  const PolyRing<K>& ring_;
  ModuleOrder order_;
  ModuleArith<K> arith_;
  int drop_block_;
  std::vector<V> basis_;
  std::vector<bool> single_comp_;
  std::vector<std::vector<int>> by_comp_;
  std::set<Item> queue_;
  std::set<std::pair<int, int>> pending_pairs_;
  std::vector<V> inputs_;
  long seq_ = 0;
  int complete_to_ = INT_MIN;
};

// ---------------------------------------------------------------- ideals

template <class K>
MVec<K> to_mvec(const Poly<K>& p) {
  MVec<K> v;
  v.reserve(p.size());
  for (const auto& t : p.terms) v.push_back({t.mono, 0, t.coeff});
  return v;
}

template <class K>
Poly<K> from_mvec(const MVec<K>& v) {
  Poly<K> p;
  p.terms.reserve(v.size());
  for (const auto& t : v) p.terms.push_back({t.mono, t.coeff});
  return p;
}

/// Reduced Groebner basis of the ideal generated by gens.
template <class K>
std::vector<Poly<K>> groebner(const PolyRing<K>& ring, const std::vector<Poly<K>>& gens) {
  ModuleGroebner<K> gb(ring, ModuleOrder({0}));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!ring.is_homogeneous(gens[i]))
      throw InputError("generator " + std::to_string(i) + " is not homogeneous: " + ring.to_string(gens[i]));
    gb.add(to_mvec(gens[i]));
  }
  gb.complete();
  std::vector<Poly<K>> out;
  for (const auto& v : gb.reduced_basis()) out.push_back(from_mvec(v));
  return out;
}

/// Remainder of p on division by the list gb (a Groebner basis for a unique result).
template <class K>
Poly<K> normal_form(const PolyRing<K>& ring, const Poly<K>& p, const std::vector<Poly<K>>& gb) {
  const K& k = ring.field();
  Poly<K> f = p;
  Poly<K> rem;
  std::size_t pos = 0;
  while (pos < f.size()) {
    const Term<K>& lt = f.terms[pos];
    const Poly<K>* red = nullptr;
    for (const auto& g : gb)
      if (!g.is_zero() && PolyRing<K>::divides(g.lead().mono, lt.mono)) {
        red = &g;
        break;
      }
    if (!red) {
      rem.terms.push_back(lt);
      ++pos;
      continue;
    }
    Monomial m = PolyRing<K>::mono_div(lt.mono, red->lead().mono);
    auto c = k.neg(k.div(lt.coeff, red->lead().coeff));
    Poly<K> rest;
    rest.terms.assign(f.terms.begin() + pos + 1, f.terms.end());
    Poly<K> tail;
    tail.terms.assign(red->terms.begin() + 1, red->terms.end());
    f = ring.axpy(rest, c, m, tail);
    pos = 0;
  }
  return rem;
}

/// Buchberger's criterion, run directly on a candidate basis: every S-pair
/// reduces to zero. Independent of ModuleGroebner's pair bookkeeping.
template <class K>
bool is_groebner_basis(const PolyRing<K>& ring, const std::vector<Poly<K>>& gens) {
  const K& k = ring.field();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const auto& a = gens[i];
      const auto& b = gens[j];
      if (a.is_zero() || b.is_zero()) continue;
      Monomial l = ring.lcm(a.lead().mono, b.lead().mono);
      Poly<K> s = ring.sub(ring.mul_term(a, PolyRing<K>::mono_div(l, a.lead().mono), k.inv(a.lead().coeff)),
                           ring.mul_term(b, PolyRing<K>::mono_div(l, b.lead().mono), k.inv(b.lead().coeff)));
      if (!normal_form(ring, s, gens).is_zero()) return false;
    }
  return true;
}

template <class K>
bool is_reduced_basis(const PolyRing<K>& ring, const std::vector<Poly<K>>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero() || !ring.field().is_one(gens[i].lead().coeff)) return false;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : gens[i].terms)
        if (PolyRing<K>::divides(gens[j].lead().mono, t.mono)) return false;
    }
  }
  return true;
}

template <class K>
struct DivisionResult {
  std::vector<Poly<K>> quotients;
  Poly<K> remainder;
};

/// Division by a fixed list of homogeneous divisors, reusable across dividends.
///
/// The divisors need not form a Groebner basis: each f_j is tagged with a
/// unit vector in an eliminated block, so the tags of the completed basis carry
/// the expression of every basis element in terms of the f_j.
template <class K>
class Divider {
 public:
  Divider(const PolyRing<K>& ring, const std::vector<Poly<K>>& divisors)
      : ring_(ring), c_(static_cast<int>(divisors.size())), gb_(ring, make_order(ring, divisors), 1) {
    const K& k = ring.field();
    for (int j = 0; j < c_; ++j) {
      MVec<K> v = to_mvec(divisors[j]);
      v.push_back({Monomial{}, 1 + j, k.one()});
      gb_.add(std::move(v));
    }
    gb_.complete();
  }

  /// p = sum_j g_j f_j + r with r the normal form of p modulo (f).
  DivisionResult<K> divide(const Poly<K>& p) const {
    const K& k = ring_.field();
    DivisionResult<K> out;
    out.quotients.assign(c_, Poly<K>{});
    // reduce each homogeneous component of p separately
    std::map<int, std::vector<Term<K>>> by_degree;
    for (const auto& t : p.terms) by_degree[t.mono.deg].push_back(t);
    std::vector<std::vector<Term<K>>> q(c_);
    std::vector<Term<K>> rem_terms;
    for (auto& [deg, terms] : by_degree) {
      MVec<K> v;
      for (const auto& t : terms) v.push_back({t.mono, 0, t.coeff});
      MVec<K> r = gb_.reduce(std::move(v));
      for (const auto& t : r) {
        if (t.comp == 0)
          rem_terms.push_back({t.mono, t.coeff});
        else  // bottom part is -(sum g_j e_j)
          q[t.comp - 1].push_back({t.mono, k.neg(t.coeff)});
      }
    }
    for (int j = 0; j < c_; ++j) out.quotients[j] = ring_.normalize(std::move(q[j]));
    out.remainder = ring_.normalize(std::move(rem_terms));
    return out;
  }

 private:
  static ModuleOrder make_order(const PolyRing<K>& ring, const std::vector<Poly<K>>& divisors) {
    const int c = static_cast<int>(divisors.size());
    std::vector<int> shift(1 + c, 0), block(1 + c, 1);
    block[0] = 0;
    for (int j = 0; j < c; ++j) {
      if (divisors[j].is_zero()) throw InputError("zero divisor polynomial at index " + std::to_string(j));
      if (!ring.is_homogeneous(divisors[j])) throw InputError("divisor " + std::to_string(j) + " is not homogeneous");
      shift[1 + j] = ring.degree(divisors[j]);
    }
    return ModuleOrder(shift, block);
  }

  const PolyRing<K>& ring_;
  int c_;
  ModuleGroebner<K> gb_;
};

/// Writes p = sum_j g_j f_j + r with r the normal form of p modulo (f).
template <class K>
DivisionResult<K> division_with_quotients(const PolyRing<K>& ring, const Poly<K>& p,
                                          const std::vector<Poly<K>>& divisors) {
  return Divider<K>(ring, divisors).divide(p);
}

}  // namespace cmperiodica
