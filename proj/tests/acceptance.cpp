// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "candidates.hpp"
#include "cmperiodica/cli.hpp"
#include "cmperiodica/support_variety.hpp"
#include "oracles.hpp"

using namespace cmperiodica;
namespace fs = std::filesystem;

namespace {

using K = PrimeField;

struct Outcome {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why = msg;
    }
  }
};

RingPtr<K> ring(std::initializer_list<const char*> vars, const std::vector<std::string>& rel = {}) {
  return make_ring<K>(K(), standard_vars(vars), rel);
}

std::vector<Poly<K>> gens(const RingPtr<K>& A) {
  std::vector<Poly<K>> v;
  for (int i = 0; i < A->nvars(); ++i) v.push_back(A->base().var(i));
  return v;
}

bool all_ok(const std::vector<Check>& cs, std::string* first = nullptr) {
  for (const auto& c : cs)
    if (!c.ok()) {
      if (first) *first = c.name + ": " + c.detail;
      return false;
    }
  return true;
}

std::vector<long> lengths(const VerificationBundle<K>& b) {
  std::vector<long> out;
  for (const auto& e : b.cohomology.entries) out.push_back(e.length.value_or(-1));
  return out;
}

std::string str(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

std::string corpus(const std::string& rel) { return (fs::path(cli::corpus_dir()) / rel).string(); }

std::vector<std::string> corpus_files(const std::string& sub) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(corpus(sub)))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

template <class Fn>
void with_corpus_complex(const std::string& file, Fn&& fn) {
  Source src = read_source(file);
  RingSpec spec = complex_ring_spec(src);
  with_field(spec.field, [&](auto field) {
    auto F = complex_from_json(build_ring(spec, field), src);
    fn(F, src);
    return 0;
  });
}

// ---------------------------------------------------------------- criteria

Outcome c1() {
  Outcome o;
  auto kx = ring({"x"}), kxy = ring({"x", "y"}), kxyz = ring({"x", "y", "z"});
  struct Case {
    std::string name;
    FreeComplex<K> F;
    int beta;
    std::vector<long> len;
  };
  std::vector<Case> cases = {{"dim1", construct_dim1(kx, kx->parse("x")), 1, {1, 0}},
                             {"dim2", construct_dim2(kxy, gens(kxy), gens(kxy)), 2, {1, 1}},
                             {"dim3", construct_dim3(kxyz, gens(kxyz)), 3, {1, 0}}};
  for (const auto& c : cases) {
    auto b = verify_periodic_package(c.F);
    std::string first;
    o.require(all_ok(b.checks, &first), c.name + " " + first);
    o.require(b.beta == c.beta, c.name + " beta");
    o.require(lengths(b) == c.len, c.name + " lengths " + str(lengths(b)));
    o.require(!b.red_alert, c.name + " red alert");
  }
  return o;
}

Outcome c2() {
  Outcome o;
  std::vector<const char*> names = {"x", "y", "z"};
  for (int d = 1; d <= 3; ++d) {
    std::vector<Variable> vars;
    for (int i = 0; i < d; ++i) vars.push_back({names[i], 1});
    auto r = construct_2d(make_ring<K>(K(), vars, {}));
    std::string first;
    o.require(all_ok(r.checks, &first) && all_ok(r.bundle.checks, &first), "d=" + std::to_string(d) + " " + first);
    o.require(r.bundle.beta == (1 << d), "d=" + std::to_string(d) + " beta");
    long binom = 0;
    for (int i = 0; i <= d; ++i) binom += binomial(d, i);
    o.require(r.binomial_sum == binom && binom == (1L << d), "binomial sum");
    o.require(r.betti_B.size() > static_cast<std::size_t>(d) && r.betti_B[d] == binom, "betti of k over B");
  }
  return o;
}

Outcome c3(const candidates::SuiteResult& s2, const candidates::SuiteResult& s3) {
  Outcome o;
  int corpus_checked = 0;
  for (const auto& f : corpus_files("complexes"))
    with_corpus_complex(f, [&](const auto& F, const Source&) {
      auto b = verify_periodic_package(F);
      if (!b.ok() || F.ring->krull_dimension() == 0) return;
      ++corpus_checked;
      for (int i = F.start; i < F.start + *F.period; ++i)
        o.require(F.rank(i) == F.rank(i + 1), "rank jump in " + f);
    });
  o.require(corpus_checked > 0, "no verified corpus complex");
  for (const auto* s : {&s2, &s3}) {
    o.require(s->generated == 50, "suite generated " + std::to_string(s->generated));
    o.require(s->rank_violations == 0, "suite rank violation");
    o.require(s->verified_core > 0, "no candidate reached the rank comparison");
  }
  if (o.ok)
    o.why = std::to_string(corpus_checked) + " corpus complexes, " + std::to_string(s2.verified_core) + " + " +
            std::to_string(s3.verified_core) + " random candidates compared";
  return o;
}

Outcome c4(const candidates::SuiteResult& s2, const candidates::SuiteResult& s3) {
  Outcome o;
  for (int b : s2.verified_betas) o.require(b >= 2, "beta " + std::to_string(b) + " over k[x,y]");
  for (int b : s3.verified_betas) o.require(b >= 3, "beta " + std::to_string(b) + " over k[x,y,z]");
  o.require(s2.red_alerts == 0 && s3.red_alerts == 0, "red alert");
  o.require(!s2.verified_betas.empty() && !s3.verified_betas.empty(), "suite verified nothing");
  auto shipped = [&](const std::string& f, int beta) {
    with_corpus_complex(corpus(f), [&](const auto& F, const Source&) {
      auto b = verify_periodic_package(F);
      o.require(b.ok() && b.beta == beta, f + " does not verify with beta " + std::to_string(beta));
    });
  };
  shipped("complexes/dim2_kxy.json", 2);
  shipped("complexes/dim3_kxyz.json", 3);
  return o;
}

Outcome c5() {
  Outcome o;
  auto A = ring({"x", "y"}, {"x^2", "y^2"});
  auto res = minimal_free_resolution(residue_field_module(A), 11);
  auto b = res.betti();
  auto series = oracle::ci_poincare(2, 2, 10);
  for (int n = 0; n <= 10; ++n) {
    o.require(series[n] == n + 1, "oracle series");
    o.require(b[n] == n + 1, "beta_" + std::to_string(n) + " = " + std::to_string(b[n]));
  }
  oracle::ArtinianRing R(A->base(), A->relations(), 8);
  auto dense = oracle::betti(R, gens(A), 7);
  o.require(std::equal(dense.begin(), dense.end(), b.begin()), "dense oracle " + str(dense));
  auto g = complexity_estimate(b);
  o.require(g.complexity == 2, "complexity " + g.complexity_string());
  return o;
}

Outcome c6() {
  Outcome o;
  for (auto A : {ring({"x"}, {"x^2"}), ring({"x", "y"}, {"x^2", "y^2"})}) {
    auto op = eisenbud_operators(minimal_free_resolution(residue_field_module(A), 8));
    std::string first;
    o.require(all_ok({check_operator_identity(op), check_operator_commutation(op)}, &first), first);
    auto E = ext_window_residue(op, 8);
    o.require(check_ext_commutation(E).ok(), "Ext actions do not commute");
  }
  return o;
}

Outcome c7() {
  Outcome o;
  auto A = ring({"x", "y"}, {"x^2", "y^2"});
  auto cert = slice(residue_field_module(A), 12);
  std::string first;
  o.require(all_ok(cert.checks, &first), first);
  const auto& r = cert.sequence_report;
  o.require(r.ok(), "sequence report");
  for (std::size_t i = 0; i < r.betti_M.size(); ++i)
    o.require(r.betti_M[i] == r.betti_K[i] + r.betti_N[i], "additivity at " + std::to_string(i));
  bool tor = false;
  for (const auto& c : cert.checks) tor = tor || (c.name == "Tor surjectivity" && c.ok());
  o.require(tor, "Tor surjectivity not certified");
  o.require(cert.cx_M.complexity == 2 && cert.cx_K.complexity == 1,
            "cx M = " + cert.cx_M.complexity_string() + ", cx K = " + cert.cx_K.complexity_string());
  return o;
}

Outcome c8() {
  Outcome o;
  auto A = ring({"x", "y"}, {"x^2", "y^2"});
  auto k = residue_field_module(A);
  auto Ax = cyclic_module(A, {A->parse("x")});
  const int bound = 12;
  auto kk = variety(k, k, bound), xk = variety(Ax, k, bound);
  o.require(kk.dim_affine == 2 && kk.dim_projective == 1, "dim V(k,k)");
  o.require(xk.dim_affine == 1 && xk.dim_projective == 0, "dim V(A/x,k)");
  o.require(kk.cx && kk.cx->complexity == 2, "cx(k,k)");
  o.require(xk.cx && xk.cx->complexity == 1, "cx(A/x,k)");
  o.require(!kk.provisional && !xk.provisional, "provisional window");
  for (const auto& [U, V] : std::vector<std::pair<ModulePresentation<K>, ModulePresentation<K>>>{{k, k}, {Ax, k}}) {
    std::string first;
    o.require(all_ok(variety_identities_check(U, V, bound).checks, &first), first);
  }
  if (o.ok) o.why = "window bound " + std::to_string(bound);
  return o;
}

Outcome c9() {
  Outcome o;
  std::mt19937 rng(7);
  auto kxy = ring({"x", "y"}), kxyz = ring({"x", "y", "z"});
  for (const auto& F : {construct_dim2(kxy, gens(kxy), gens(kxy)), construct_dim3(kxyz, gens(kxyz))}) {
    auto rel = candidates::relabel(F, rng);
    auto G = circularize(rel.window, rel.psi);
    o.require(check_complex(G).ok(), "circular complex");
    o.require(same_periodic_data(G, shift(G, 2), G.twist), "G != G[2]");
    for (int i : {1, 2}) {
      auto hg = cohomology_entry(G, i), hf = cohomology_entry(rel.window, i);
      o.require(hg.finite_length && hf.finite_length && *hg.length == *hf.length && hg.hilbert == hf.hilbert,
                "cohomology at " + std::to_string(i));
    }
  }
  return o;
}

Outcome c10() {
  Outcome o;
  auto run = [](const std::vector<std::string>& argv) {
    std::ostringstream out, err;
    int code = cli::run(argv, out, err);
    return std::make_pair(code, out.str());
  };
  auto a = run({"corpus", "--check", "--no-timings"}), b = run({"corpus", "--check", "--no-timings"});
  o.require(a.first == 0, "corpus --check failed");
  o.require(a.second == b.second, "corpus reports differ between runs");
  for (const auto& f : corpus_files("rings")) {
    Source src = read_source(f);
    RingSpec spec = ring_spec_from_json(src, src.value);
    json back = with_field(spec.field, [&](auto field) { return ring_to_json(*build_ring(spec, field)); });
    o.require(dump(back) == dump(src.value), "ring round trip " + f);
  }
  for (const auto& f : corpus_files("complexes"))
    with_corpus_complex(f, [&](const auto& F, const Source& src) {
      o.require(dump(complex_to_json(F)) == dump(src.value), "complex round trip " + f);
    });
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const std::string& what, double limit_s, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.why = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && s >= limit_s) {
      o.ok = false;
      o.why = "took " + std::to_string(s) + " s";
    }
    if (!o.ok) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << " [" << s << " s]";
    if (!o.why.empty()) line << " (" << o.why << ")";
    std::cout << line.str() << std::endl;
  };

  report(1, "construction golden suite", 5, c1);
  report(2, "construct_2d beta = 2^d for d = 1..3", 60, c2);
  candidates::SuiteResult s2, s3;
  report(3, "equal consecutive ranks on corpus and 50 random candidates", 0, [&] {
    s2 = candidates::run_suite(ring({"x", "y"}), 50, 20261014);
    s3 = candidates::run_suite(ring({"x", "y", "z"}), 50, 1014);
    return c3(s2, s3);
  });
  report(4, "no verified beta below dim A in the random suite", 0, [&] { return c4(s2, s3); });
  report(5, "Betti numbers n + 1 and complexity 2 over k[x,y]/(x^2,y^2)", 10, c5);
  report(6, "Eisenbud operator identities", 0, c6);
  report(7, "slice certificate for k", 30, c7);
  report(8, "support variety dimensions and identities", 0, c8);
  report(9, "circularize returns G = G[2]", 0, c9);
  report(10, "determinism and file round trips", 0, c10);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
