#pragma once

// Growth of integer sequences: complexity and curvature from finite windows.

#include <optional>
#include <string>
#include <vector>

#include "cmperiodica/complex.hpp"
#include "cmperiodica/field.hpp"

namespace cmperiodica {

inline constexpr int kMinGrowthWindow = 10;

/// Smallest j such that the last three values of the j-th difference agree;
/// -1 for an eventually zero sequence, nullopt when no difference stabilizes.
inline std::optional<int> fitted_degree(const std::vector<long>& s) {
  std::vector<long> cur = s;
  for (int j = 0; cur.size() >= 3; ++j) {
    const std::size_t n = cur.size();
    if (cur[n - 1] == cur[n - 2] && cur[n - 2] == cur[n - 3]) return cur[n - 1] == 0 && j == 0 ? -1 : j;
    std::vector<long> next(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) next[i] = cur[i + 1] - cur[i];
    cur = std::move(next);
  }
  return std::nullopt;
}

struct GrowthEstimate {
  std::optional<int> complexity;  // nullopt: unstable
  std::optional<int> even_degree, odd_degree;
  int window = 0;
  // curvature evidence
  BigRational ratio_lower, ratio_upper;  // extreme trailing ratios beta_{n+1}/beta_n
  BigRational root_lower;                // a rational r with r^n <= beta_n at the last n
  std::string curvature_verdict;
  std::string diagnostics;

  std::string complexity_string() const { return complexity ? std::to_string(*complexity) : "unstable"; }
};

inline void require_window(const std::vector<long>& b) {
  if (static_cast<int>(b.size()) < kMinGrowthWindow)
    throw InputError("growth estimates need at least " + std::to_string(kMinGrowthWindow) + " values, got " +
                     std::to_string(b.size()));
  for (long v : b)
    if (v < 0) throw InputError("Betti numbers must be nonnegative");
}

/// Complexity: 1 + the larger fitted degree of the even and odd subsequences,
/// 0 for eventually zero sequences.
inline GrowthEstimate complexity_estimate(const std::vector<long>& b) {
  require_window(b);
  GrowthEstimate g;
  g.window = static_cast<int>(b.size());
  std::vector<long> ev, od;
  for (std::size_t i = 0; i < b.size(); ++i) (i % 2 == 0 ? ev : od).push_back(b[i]);
  g.even_degree = fitted_degree(ev);
  g.odd_degree = fitted_degree(od);
  if (!g.even_degree || !g.odd_degree) {
    g.diagnostics = std::string("no stable finite difference in the ") + (!g.even_degree ? "even" : "odd") +
                    " subsequence over " + std::to_string(b.size()) + " values";
    return g;
  }
  const int deg = std::max(*g.even_degree, *g.odd_degree);
  g.complexity = deg < 0 ? 0 : deg + 1;
  g.diagnostics = "fitted degrees even " + std::to_string(*g.even_degree) + ", odd " + std::to_string(*g.odd_degree) +
                  " over " + std::to_string(b.size()) + " values";
  return g;
}

inline std::string rational_string(const BigRational& q) {
  std::string s = boost::multiprecision::numerator(q).str();
  if (boost::multiprecision::denominator(q) != 1) s += "/" + boost::multiprecision::denominator(q).str();
  return s;
}

/// Largest p/den with (p/den)^n <= v.
inline BigRational nth_root_floor(long v, int n, long den = 1000) {
  if (n <= 0 || v <= 0) return BigRational(0);
  BigInt target = BigInt(v) * boost::multiprecision::pow(BigInt(den), n);
  BigInt lo = 0, hi = BigInt(den) * (v + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, n) <= target)
      lo = mid;
    else
      hi = mid - 1;
  }
  return BigRational(lo, den);
}

/// Rational evidence about limsup beta_n^{1/n} from the trailing window.
inline GrowthEstimate curvature_estimate(const std::vector<long>& b) {
  GrowthEstimate g = complexity_estimate(b);
  const int n = static_cast<int>(b.size());
  const int trail = 5;
  bool zero_tail = true;
  for (int i = n - trail; i < n; ++i)
    if (b[i] != 0) zero_tail = false;
  if (zero_tail) {
    g.ratio_lower = g.ratio_upper = g.root_lower = 0;
    g.curvature_verdict = "curvature 0 (eventually zero)";
    return g;
  }
  bool first = true;
  for (int i = n - trail; i + 1 < n; ++i) {
    if (b[i] == 0) continue;
    BigRational r(b[i + 1], b[i]);
    if (first || r < g.ratio_lower) g.ratio_lower = r;
    if (first || r > g.ratio_upper) g.ratio_upper = r;
    first = false;
  }
  g.root_lower = nth_root_floor(b[n - 1], n - 1);
  if (g.complexity && *g.complexity >= 1)
    g.curvature_verdict = "curvature evidence = 1 (polynomial growth of degree " +
                          std::to_string(*g.complexity - 1) + ")";
  else if (g.complexity)
    g.curvature_verdict = "curvature 0 (eventually zero)";
  else if (g.ratio_lower > 1 && g.root_lower > 1)
    g.curvature_verdict = "curvature evidence > 1: trailing ratios >= " + rational_string(g.ratio_lower) +
                          ", beta_n^(1/n) >= " + rational_string(g.root_lower);
  else
    g.curvature_verdict = "no curvature evidence";
  return g;
}

// ---------------------------------------------------------------- function calculus

struct CalculusReport {
  std::vector<Check> checks;
  std::optional<int> n0;  // start of the recursion f(n+d) <= f(n) + g(n) + g(n-1)
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
};

inline std::string degree_string(std::optional<int> d) {
  if (!d) return "unstable";
  return *d < 0 ? "-inf" : std::to_string(*d);
}

/// Window checks of the closure properties of polynomial-type functions
/// (parameters a, b) and of the complexity bound from the recursion
/// f(n + d) <= f(n) + g(n) + g(n - 1).
inline CalculusReport cx_function_calculus_check(const std::vector<long>& f, const std::vector<long>& g, int a, int b,
                                                 int d) {
  CalculusReport rep;
  const int n = static_cast<int>(f.size());
  const auto r = fitted_degree(f);
  auto leq = [](std::optional<int> x, std::optional<int> bound) { return x && bound && *x <= *bound; };
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.checks.push_back(ok ? Check::passed(name, detail) : Check::failed(name, detail));
  };
  if (!r) {
    rep.checks.push_back(Check::skipped("polynomial type", "f has no stable fitted degree on the window"));
  } else {
    std::vector<long> s1;
    for (int i = 0; i + std::max(a, 0) < n && i + a >= 0; ++i) s1.push_back(f[i] + f[i + a]);
    record("f(n) + f(n+a)", leq(fitted_degree(s1), std::max(*r, -1)),
           "degree " + degree_string(fitted_degree(s1)) + " vs " + degree_string(r));
    std::vector<long> s2;
    for (int i = 0; a >= 0 && a * i + b < n; ++i)
      if (a * i + b >= 0) s2.push_back(f[a * i + b]);
    if (s2.size() >= 3)
      record("f(an+b)", leq(fitted_degree(s2), std::max(*r, -1)) || fitted_degree(s2) == std::optional<int>(-1),
             "degree " + degree_string(fitted_degree(s2)) + " vs " + degree_string(r));
    std::vector<long> s3{0};
    for (int i = 0; a >= 0 && a * i + b < n; ++i)
      if (a * i + b >= 0) s3.push_back(s3.back() + f[a * i + b]);
    if (s3.size() >= 4)
      record("sum f(ia+b)", leq(fitted_degree(s3), *r + 1), "degree " + degree_string(fitted_degree(s3)) + " vs " +
                                                                 std::to_string(*r + 1));
    const int e = std::max(*r, 0);
    std::vector<long> s4;
    long acc = 0;
    for (int i = 0; i < n; ++i) {
      long p = 1;
      for (int k = 0; k < e; ++k) p *= i;
      acc += p;
      s4.push_back(acc);
    }
    record("sum i^r", fitted_degree(s4) == e + 1, "degree " + degree_string(fitted_degree(s4)) + " for r = " +
                                                      std::to_string(e));
  }
  if (!g.empty() && d > 0) {
    // smallest n0 after which the recursion holds throughout the window
    const int m = std::min<int>(n - d, static_cast<int>(g.size()));
    std::optional<int> n0;
    for (int k = m - 1; k >= 1; --k) {
      if (f[k + d] <= f[k] + g[k] + g[k - 1])
        n0 = k;
      else
        break;
    }
    rep.n0 = n0;
    if (!n0 || m - *n0 < 3) {
      rep.checks.push_back(Check::failed("recursion", "f(n+d) <= f(n) + g(n) + g(n-1) does not hold on a tail"));
      return rep;
    }
    // f_i(m) = f(n0 + i + dm) <= f(n0 + i) + sum_{k<m} h(n0 + i + kd), h(n) = g(n) + g(n-1)
    bool bound_ok = true;
    for (int i = 0; i < d && bound_ok; ++i) {
      long partial = 0;
      for (int mm = 0; *n0 + i + d * mm < n; ++mm) {
        const int idx = *n0 + i + d * mm;
        if (f[idx] > f[*n0 + i] + partial) bound_ok = false;
        const int hi = idx;
        if (hi < static_cast<int>(g.size())) partial += g[hi] + (hi >= 1 ? g[hi - 1] : 0);
        else break;
      }
    }
    record("partial-sum bound", bound_ok, "n0 = " + std::to_string(*n0));
    const auto dg = fitted_degree(g), df = fitted_degree(f);
    if (dg && df) {
      const int cxg = *dg < 0 ? 0 : *dg + 1, cxf = *df < 0 ? 0 : *df + 1;
      record("cx f <= cx g + 1", cxf <= cxg + 1, "cx f = " + std::to_string(cxf) + ", cx g = " + std::to_string(cxg));
    } else {
      rep.checks.push_back(Check::skipped("cx f <= cx g + 1", "unstable fitted degree"));
    }
  }
  return rep;
}

}  // namespace cmperiodica
