#pragma once

// A = Q/I for Q a weighted polynomial ring and I a homogeneous ideal.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cmperiodica/groebner.hpp"
#include "cmperiodica/polynomial.hpp"

namespace cmperiodica {

/// Calls fn for every monomial of weighted degree d, in a fixed order.
template <class K, class Fn>
void for_each_monomial(const PolyRing<K>& ring, int d, Fn&& fn) {
  const int n = ring.nvars();
  std::vector<int> e(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      if (left == 0) fn(ring.mono_from_exponents(e));
      return;
    }
    const int w = ring.weight(i);
    for (int a = left / w; a >= 0; --a) {
      e[i] = a;
      rec(i + 1, left - a * w);
    }
    e[i] = 0;
  };
  if (d < 0) return;
  rec(0, d);
}

template <class K>
std::vector<Monomial> monomials_of_degree(const PolyRing<K>& ring, int d) {
  std::vector<Monomial> out;
  for_each_monomial(ring, d, [&](const Monomial& m) { out.push_back(m); });
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring.compare(a, b) > 0; });
  return out;
}

/// Krull dimension of Q/(monomial ideal): the largest set of variables
/// supporting no generator.
template <class K>
int monomial_ideal_dimension(const PolyRing<K>& ring, const std::vector<Monomial>& gens) {
  const int n = ring.nvars();
  std::vector<unsigned> supports;
  for (const auto& m : gens) {
    unsigned s = 0;
    for (int i = 0; i < n; ++i)
      if (m.exp[i] != 0) s |= 1u << i;
    supports.push_back(s);
  }
  int best = -1;
  for (unsigned set = 0; set < (1u << n); ++set) {
    bool ok = true;
    for (unsigned s : supports)
      if ((s & ~set) == 0) {
        ok = false;
        break;
      }
    if (ok) best = std::max(best, __builtin_popcount(set));
  }
  return best;  // -1 for the unit ideal
}

template <class K>
class QuotientRing {
 public:
  using Field = K;
  using Elem = typename K::Elem;
  using P = Poly<K>;

  /// Relations must be homogeneous; with require_square each must lie in the
  /// square of the irrelevant ideal.
  QuotientRing(PolyRing<K> base, std::vector<P> relations, bool require_square = true)
      : base_(std::move(base)), relations_(std::move(relations)) {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      const P& f = relations_[i];
      if (f.is_zero()) throw InputError("relation " + std::to_string(i) + " is zero");
      if (!base_.is_homogeneous(f))
        throw InputError("relation " + std::to_string(i) + " is not homogeneous: " + base_.to_string(f));
      if (require_square && !base_.in_irrelevant_square(f))
        throw InputError("relation " + std::to_string(i) +
                         " has a constant or linear part: " + base_.to_string(f));
    }
    gb_ = groebner(base_, relations_);
  }

  const PolyRing<K>& base() const { return base_; }
  const K& field() const { return base_.field(); }
  int nvars() const { return base_.nvars(); }
  const std::vector<P>& relations() const { return relations_; }
  const std::vector<P>& relation_basis() const { return gb_; }
  bool is_polynomial_ring() const { return gb_.empty(); }

  P reduce(const P& p) const { return gb_.empty() ? p : normal_form(base_, p, gb_); }
  P add(const P& a, const P& b) const { return base_.add(a, b); }
  P sub(const P& a, const P& b) const { return base_.sub(a, b); }
  P mul(const P& a, const P& b) const { return reduce(base_.mul(a, b)); }
  bool is_zero(const P& a) const { return reduce(a).is_zero(); }
  P parse(std::string_view s) const { return reduce(base_.parse(s)); }
  std::string to_string(const P& p) const { return base_.to_string(p); }

  bool is_standard(const Monomial& m) const {
    for (const auto& g : gb_)
      if (PolyRing<K>::divides(g.lead().mono, m)) return false;
    return true;
  }
  /// dim_k A_d.
  long hilbert_function(int d) const {
    long n = 0;
    for_each_monomial(base_, d, [&](const Monomial& m) { n += is_standard(m) ? 1 : 0; });
    return n;
  }
  int krull_dimension() const {
    std::vector<Monomial> lts;
    for (const auto& g : gb_) lts.push_back(g.lead().mono);
    return monomial_ideal_dimension(base_, lts);
  }

  friend bool operator==(const QuotientRing& a, const QuotientRing& b) {
    return a.base_ == b.base_ && a.gb_ == b.gb_;
  }

 private:
  PolyRing<K> base_;
  std::vector<P> relations_;
  std::vector<P> gb_;
};

template <class K>
using RingPtr = std::shared_ptr<const QuotientRing<K>>;

template <class K>
RingPtr<K> make_ring(PolyRing<K> base, std::vector<Poly<K>> relations = {}, bool require_square = true) {
  return std::make_shared<const QuotientRing<K>>(std::move(base), std::move(relations), require_square);
}

/// Builds a ring from variable names (all of degree 1 unless given) and relation strings.
template <class K>
RingPtr<K> make_ring(K field, const std::vector<Variable>& vars, const std::vector<std::string>& relations = {}) {
  PolyRing<K> base(std::move(field), vars);
  std::vector<Poly<K>> rel;
  for (const auto& s : relations) rel.push_back(base.parse(s));
  return make_ring<K>(std::move(base), std::move(rel));
}

inline std::vector<Variable> standard_vars(std::initializer_list<const char*> names) {
  std::vector<Variable> v;
  for (const char* n : names) v.push_back({n, 1});
  return v;
}

}  // namespace cmperiodica
