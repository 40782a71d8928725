#pragma once

// Exact coefficient fields: Z/p for a word-sized prime p, and Q.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmperiodica/error.hpp"

namespace cmperiodica {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Z/p with elements stored as canonical residues in [0, p).
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 32003) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw InputError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }

  Elem add(Elem a, Elem b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Elem inv(Elem a) const {
    if (a == 0) throw MathError("division by zero in GF(" + std::to_string(p_) + ")");
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }
  Elem from_big(const BigInt& v) const {
    BigInt r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }
  /// Parses "a" or "a/b" with decimal integers.
  Elem from_string(std::string_view num, std::string_view den = {}) const {
    Elem n = from_big(BigInt(std::string(num)));
    if (den.empty()) return n;
    Elem d = from_big(BigInt(std::string(den)));
    if (d == 0) throw MathError("denominator vanishes modulo " + std::to_string(p_));
    return div(n, d);
  }

  /// Symmetric representative in (-p/2, p/2].
  std::int64_t lift(Elem a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }
  std::string to_string(Elem a) const { return std::to_string(lift(a)); }
  bool is_negative(Elem a) const { return lift(a) < 0; }

  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  /// Iterates field elements in the deterministic sweep order 0, 1, 2, ...
  Elem nth_element(std::uint64_t n) const { return static_cast<Elem>(n % p_); }
  std::uint64_t size_hint() const { return p_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// The rational numbers, backed by an arbitrary-precision rational type.
class RationalField {
 public:
  using Elem = BigRational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw MathError("division by zero in Q");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  Elem from_int(std::int64_t v) const { return Elem(v); }
  Elem from_big(const BigInt& v) const { return Elem(v); }
  Elem from_string(std::string_view num, std::string_view den = {}) const {
    BigInt n(std::string{num});
    if (den.empty()) return Elem(n);
    BigInt d(std::string{den});
    if (d == 0) throw MathError("zero denominator");
    return Elem(n, d);
  }

  std::string to_string(const Elem& a) const { return a.str(); }
  bool is_negative(const Elem& a) const { return a < 0; }

  std::string name() const { return "QQ"; }

  Elem nth_element(std::uint64_t n) const { return Elem(static_cast<std::int64_t>(n)); }
  std::uint64_t size_hint() const { return UINT64_MAX; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class K>
concept ExactField = requires(const K& k, typename K::Elem a, std::int64_t v) {
  { k.zero() } -> std::convertible_to<typename K::Elem>;
  { k.one() } -> std::convertible_to<typename K::Elem>;
  { k.add(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.sub(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.mul(a, a) } -> std::convertible_to<typename K::Elem>;
  { k.inv(a) } -> std::convertible_to<typename K::Elem>;
  { k.neg(a) } -> std::convertible_to<typename K::Elem>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { k.from_int(v) } -> std::convertible_to<typename K::Elem>;
  { k.to_string(a) } -> std::convertible_to<std::string>;
};

}  // namespace cmperiodica
