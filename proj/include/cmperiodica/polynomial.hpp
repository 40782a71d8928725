#pragma once

// Sparse multivariate polynomials over an exact field, with positive variable
// weights and a degree-compatible monomial order.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmperiodica/error.hpp"
#include "cmperiodica/field.hpp"

namespace cmperiodica {

inline constexpr int kMaxVars = 16;

/// Exponent vector plus its cached weighted degree.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::int32_t deg = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  bool is_one() const { return deg == 0; }
};

enum class MonomialOrder {
  grevlex,  // weighted degree, then reverse lexicographic
  glex,     // weighted degree, then lexicographic
};

inline std::string to_string(MonomialOrder o) {
  return o == MonomialOrder::grevlex ? "grevlex" : "glex";
}

template <class K>
struct Term {
  Monomial mono;
  typename K::Elem coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Terms are kept strictly decreasing in the ring's monomial order with no
/// zero coefficients, so structural equality is polynomial equality.
template <class K>
struct Poly {
  std::vector<Term<K>> terms;

  bool is_zero() const { return terms.empty(); }
  const Term<K>& lead() const { return terms.front(); }
  std::size_t size() const { return terms.size(); }
  friend bool operator==(const Poly&, const Poly&) = default;
};

struct Variable {
  std::string name;
  int degree = 1;
  friend bool operator==(const Variable&, const Variable&) = default;
};

template <class K>
class PolyRing {
 public:
  using Elem = typename K::Elem;
  using P = Poly<K>;

  PolyRing(K field, std::vector<Variable> vars, MonomialOrder order = MonomialOrder::grevlex)
      : field_(std::move(field)), vars_(std::move(vars)), order_(order) {
    if (static_cast<int>(vars_.size()) > kMaxVars)
      throw InputError("at most " + std::to_string(kMaxVars) + " variables are supported");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].degree <= 0)
        throw InputError("variable '" + vars_[i].name + "' must have positive degree");
      if (vars_[i].name.empty() || !(std::isalpha(static_cast<unsigned char>(vars_[i].name[0])) ||
                                     vars_[i].name[0] == '_'))
        throw InputError("invalid variable name '" + vars_[i].name + "'");
      for (char ch : vars_[i].name)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
          throw InputError("invalid variable name '" + vars_[i].name + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[j].name == vars_[i].name)
          throw InputError("duplicate variable name '" + vars_[i].name + "'");
    }
  }

  const K& field() const { return field_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  MonomialOrder order() const { return order_; }
  int weight(int i) const { return vars_[i].degree; }
  int min_weight() const {
    int w = 0;
    for (const auto& v : vars_) w = (w == 0 || v.degree < w) ? v.degree : w;
    return w;
  }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.order_ == b.order_;
  }

  // ---- monomials ----

  Monomial one_mono() const { return {}; }
  Monomial var_mono(int i, int e = 1) const {
    Monomial m;
    m.exp[i] = static_cast<std::uint16_t>(e);
    m.deg = e * vars_[i].degree;
    return m;
  }
  Monomial mono_from_exponents(const std::vector<int>& e) const {
    Monomial m;
    for (int i = 0; i < nvars(); ++i) {
      m.exp[i] = static_cast<std::uint16_t>(e[i]);
      m.deg += e[i] * vars_[i].degree;
    }
    return m;
  }

  /// Three-way comparison: positive when a is larger.
  int compare(const Monomial& a, const Monomial& b) const {
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    const int n = nvars();
    if (order_ == MonomialOrder::grevlex) {
      for (int i = n - 1; i >= 0; --i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    } else {
      for (int i = 0; i < n; ++i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
    }
    return 0;
  }

  static Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(a.exp[i]) + b.exp[i];
      if (s > 0xFFFFu) throw MathError("exponent overflow");
      m.exp[i] = static_cast<std::uint16_t>(s);
    }
    m.deg = a.deg + b.deg;
    return m;
  }
  static bool divides(const Monomial& a, const Monomial& b) {
    if (a.deg > b.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (a.exp[i] > b.exp[i]) return false;
    return true;
  }
  /// b / a, assuming divides(a, b).
  static Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
    m.deg = b.deg - a.deg;
    return m;
  }
  Monomial lcm(const Monomial& a, const Monomial& b) const {
    Monomial m;
    for (int i = 0; i < nvars(); ++i) {
      m.exp[i] = std::max(a.exp[i], b.exp[i]);
      m.deg += m.exp[i] * vars_[i].degree;
    }
    return m;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.exp[i] != 0 && b.exp[i] != 0) return false;
    return true;
  }
  int total_exponent(const Monomial& m) const {
    int s = 0;
    for (int i = 0; i < nvars(); ++i) s += m.exp[i];
    return s;
  }

  // ---- construction ----

  P zero() const { return {}; }
  P constant(const Elem& c) const {
    P p;
    if (!field_.is_zero(c)) p.terms.push_back({one_mono(), c});
    return p;
  }
  P one() const { return constant(field_.one()); }
  P from_int(std::int64_t v) const { return constant(field_.from_int(v)); }
  P var(int i) const { return P{{{var_mono(i), field_.one()}}}; }
  P monomial(const Monomial& m, const Elem& c) const {
    P p;
    if (!field_.is_zero(c)) p.terms.push_back({m, c});
    return p;
  }

  // ---- arithmetic ----

  P add(const P& a, const P& b) const { return combine(a, b, field_.one()); }
  P sub(const P& a, const P& b) const { return combine(a, b, field_.neg(field_.one())); }
  P neg(const P& a) const {
    P r = a;
    for (auto& t : r.terms) t.coeff = field_.neg(t.coeff);
    return r;
  }
  P scale(const P& a, const Elem& c) const {
    if (field_.is_zero(c)) return {};
    P r = a;
    for (auto& t : r.terms) t.coeff = field_.mul(t.coeff, c);
    return r;
  }
  P mul_term(const P& a, const Monomial& m, const Elem& c) const {
    if (field_.is_zero(c)) return {};
    P r;
    r.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) r.terms.push_back({mono_mul(t.mono, m), field_.mul(t.coeff, c)});
    return r;
  }
  /// a + c * m * b
  P axpy(const P& a, const Elem& c, const Monomial& m, const P& b) const {
    return combine(a, mul_term(b, m, c), field_.one());
  }
  P mul(const P& a, const P& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    const P& small = a.size() <= b.size() ? a : b;
    const P& big = a.size() <= b.size() ? b : a;
    P acc;
    for (const auto& t : small.terms) acc = combine(acc, mul_term(big, t.mono, t.coeff), field_.one());
    return acc;
  }
  P pow(const P& a, int e) const {
    P r = one();
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  P make_monic(const P& a) const {
    if (a.is_zero()) return a;
    return scale(a, field_.inv(a.lead().coeff));
  }

  // ---- inspection ----

  /// Weighted degree of the leading term; zero polynomial has degree -1.
  int degree(const P& a) const { return a.is_zero() ? -1 : a.lead().mono.deg; }
  bool is_homogeneous(const P& a) const {
    for (const auto& t : a.terms)
      if (t.mono.deg != a.lead().mono.deg) return false;
    return true;
  }
  Elem constant_term(const P& a) const {
    if (!a.is_zero() && a.terms.back().mono.is_one()) return a.terms.back().coeff;
    return field_.zero();
  }
  bool is_constant(const P& a) const { return a.is_zero() || a.lead().mono.is_one(); }
  /// True when every term is a product of at least two variables.
  bool in_irrelevant_square(const P& a) const {
    for (const auto& t : a.terms)
      if (total_exponent(t.mono) < 2) return false;
    return true;
  }
  /// Substitutes zero for variable v.
  P kill_variable(const P& a, int v) const {
    P r;
    for (const auto& t : a.terms)
      if (t.mono.exp[v] == 0) r.terms.push_back(t);
    return r;
  }

  /// Restores the canonical term order after arbitrary edits.
  P normalize(std::vector<Term<K>> terms) const {
    std::sort(terms.begin(), terms.end(),
              [&](const Term<K>& x, const Term<K>& y) { return compare(x.mono, y.mono) > 0; });
    P r;
    for (auto& t : terms) {
      if (!r.terms.empty() && r.terms.back().mono == t.mono) {
        r.terms.back().coeff = field_.add(r.terms.back().coeff, t.coeff);
        if (field_.is_zero(r.terms.back().coeff)) r.terms.pop_back();
      } else if (!field_.is_zero(t.coeff)) {
        r.terms.push_back(std::move(t));
      }
    }
    return r;
  }

  // ---- text ----

  std::string to_string(const Monomial& m) const {
    std::string s;
    for (int i = 0; i < nvars(); ++i) {
      if (m.exp[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += vars_[i].name;
      if (m.exp[i] > 1) s += '^' + std::to_string(m.exp[i]);
    }
    return s.empty() ? "1" : s;
  }

  /// Canonical rendering, e.g. "x^2*y - 3*z + 1".
  std::string to_string(const P& a) const {
    if (a.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : a.terms) {
      const bool negative = field_.is_negative(t.coeff);
      const Elem mag = negative ? field_.neg(t.coeff) : t.coeff;
      if (first) {
        if (negative) s += '-';
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      const std::string c = field_.to_string(mag);
      if (t.mono.is_one()) {
        s += c;
      } else if (field_.is_one(mag)) {
        s += to_string(t.mono);
      } else {
        s += c + '*' + to_string(t.mono);
      }
    }
    return s;
  }

  /// Parses sums of products of integers, rationals a/b, variables, powers and
  /// parentheses; `*` between factors is optional.
  P parse(std::string_view text) const {
    Parser p{*this, text, 0};
    p.skip_ws();
    if (p.pos >= text.size()) throw ParseError("empty polynomial", 1);
    P r = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
      throw ParseError(std::string("unexpected character '") + text[p.pos] + "'", p.pos + 1);
    return r;
  }

  int find_variable(std::string_view name) const {
    for (int i = 0; i < nvars(); ++i)
      if (vars_[i].name == name) return i;
    return -1;
  }

 private:
  P combine(const P& a, const P& b, const Elem& cb) const {
    P r;
    r.terms.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    const bool unit = field_.is_one(cb);
    while (i < a.size() && j < b.size()) {
      int c = compare(a.terms[i].mono, b.terms[j].mono);
      if (c > 0) {
        r.terms.push_back(a.terms[i++]);
      } else if (c < 0) {
        Elem v = unit ? b.terms[j].coeff : field_.mul(cb, b.terms[j].coeff);
        r.terms.push_back({b.terms[j].mono, v});
        ++j;
      } else {
        Elem v = field_.add(a.terms[i].coeff, unit ? b.terms[j].coeff : field_.mul(cb, b.terms[j].coeff));
        if (!field_.is_zero(v)) r.terms.push_back({a.terms[i].mono, v});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) r.terms.push_back(a.terms[i]);
    for (; j < b.size(); ++j) {
      Elem v = unit ? b.terms[j].coeff : field_.mul(cb, b.terms[j].coeff);
      r.terms.push_back({b.terms[j].mono, v});
    }
    return r;
  }

  struct Parser {
    const PolyRing& ring;
    std::string_view s;
    std::size_t pos;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos + 1); }

    P expr() {
      skip_ws();
      bool negate = false;
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negate = s[pos] == '-';
        ++pos;
      }
      P acc = term();
      if (negate) acc = ring.neg(acc);
      for (;;) {
        skip_ws();
        if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) break;
        const bool minus = s[pos] == '-';
        ++pos;
        P t = term();
        acc = minus ? ring.sub(acc, t) : ring.add(acc, t);
      }
      return acc;
    }

    bool starts_factor() {
      skip_ws();
      if (pos >= s.size()) return false;
      char c = s[pos];
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
    }

    P term() {
      P acc = power();
      for (;;) {
        skip_ws();
        if (pos < s.size() && s[pos] == '*') {
          ++pos;
          acc = ring.mul(acc, power());
        } else if (starts_factor()) {
          acc = ring.mul(acc, power());
        } else {
          break;
        }
      }
      return acc;
    }

    P power() {
      P base = atom();
      skip_ws();
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected exponent after '^'");
        if (pos - start > 4) fail("exponent too large");
        base = ring.pow(base, std::stoi(std::string(s.substr(start, pos - start))));
      }
      return base;
    }

    P atom() {
      skip_ws();
      if (pos >= s.size()) fail("unexpected end of polynomial");
      char c = s[pos];
      if (c == '(') {
        ++pos;
        P inner = expr();
        skip_ws();
        if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
        ++pos;
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        std::string_view num = s.substr(start, pos - start);
        std::string_view den;
        if (pos < s.size() && s[pos] == '/') {
          std::size_t dstart = ++pos;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
          if (dstart == pos) fail("expected denominator after '/'");
          den = s.substr(dstart, pos - dstart);
        }
        try {
          return ring.constant(ring.field().from_string(num, den));
        } catch (const MathError& e) {
          fail(e.what());
        }
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        // longest declared variable name matching here, so "xy" reads as x*y
        int best = -1;
        std::size_t best_len = 0;
        for (int i = 0; i < ring.nvars(); ++i) {
          const std::string& n = ring.variables()[i].name;
          if (n.size() > best_len && s.substr(pos, n.size()) == n) {
            best = i;
            best_len = n.size();
          }
        }
        if (best < 0) {
          std::size_t end = pos;
          while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) ++end;
          fail("unknown variable '" + std::string(s.substr(pos, end - pos)) + "'");
        }
        pos += best_len;
        return ring.var(best);
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  };

  K field_;
  std::vector<Variable> vars_;
  MonomialOrder order_;
};

}  // namespace cmperiodica
