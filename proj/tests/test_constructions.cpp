#include <gtest/gtest.h>

#include "candidates.hpp"
#include "cmperiodica/constructions.hpp"

using namespace cmperiodica;

namespace {

using K = PrimeField;

RingPtr<K> ring(std::initializer_list<const char*> vars, const std::vector<std::string>& rel = {}) {
  return make_ring<K>(K(), standard_vars(vars), rel);
}

std::vector<Poly<K>> gens(const RingPtr<K>& A) {
  std::vector<Poly<K>> v;
  for (int i = 0; i < A->nvars(); ++i) v.push_back(A->base().var(i));
  return v;
}

std::vector<long> lengths(const VerificationBundle<K>& b) {
  std::vector<long> out;
  for (const auto& e : b.cohomology.entries) out.push_back(e.length.value_or(-1));
  return out;
}

void expect_all_pass(const VerificationBundle<K>& b) {
  for (const auto& c : b.checks) EXPECT_TRUE(c.ok()) << c.name << ": " << c.detail;
  EXPECT_FALSE(b.red_alert);
}

}  // namespace

TEST(Construct, Dim1OverKx) {
  auto A = ring({"x"});
  auto b = verify_periodic_package(construct_dim1(A, A->parse("x")));
  expect_all_pass(b);
  EXPECT_EQ(b.beta, 1);
  EXPECT_EQ(lengths(b), (std::vector<long>{1, 0}));
}

TEST(Construct, Dim2OverKxy) {
  auto A = ring({"x", "y"});
  auto b = verify_periodic_package(construct_dim2(A, gens(A), gens(A)));
  expect_all_pass(b);
  EXPECT_EQ(b.beta, 2);
  EXPECT_EQ(lengths(b), (std::vector<long>{1, 1}));
}

TEST(Construct, Dim3OverKxyz) {
  auto A = ring({"x", "y", "z"});
  auto b = verify_periodic_package(construct_dim3(A, gens(A)));
  expect_all_pass(b);
  EXPECT_EQ(b.beta, 3);
  EXPECT_EQ(lengths(b), (std::vector<long>{1, 0}));
}

TEST(Construct, Dim2WithDifferentIdeals) {
  auto A = ring({"x", "y"});
  auto I = std::vector<Poly<K>>{A->parse("x^2"), A->parse("y")};
  auto J = std::vector<Poly<K>>{A->parse("x"), A->parse("y^3")};
  auto b = verify_periodic_package(construct_dim2(A, I, J));
  expect_all_pass(b);
  // H^0 = A/J and H^1 = A/I
  EXPECT_EQ(lengths(b), (std::vector<long>{3, 2}));
}

TEST(Construct, WeightedDegreesKeepHomogeneity) {
  auto A = make_ring<K>(K(), {{"x", 2}, {"y", 3}, {"z", 1}}, {});
  auto F = construct_dim3(A, gens(A));
  expect_all_pass(verify_periodic_package(F));
  EXPECT_EQ(F.twist, -6);
}

TEST(Construct, RejectsNonRegularInput) {
  auto A = ring({"x", "y"});
  EXPECT_THROW(construct_dim1(A, A->parse("0")), PreconditionError);
  EXPECT_THROW(construct_dim2(A, {A->parse("x"), A->parse("x*y")}, gens(A)), PreconditionError);
  EXPECT_THROW(construct_dim2(A, {A->parse("x")}, gens(A)), InputError);
  auto B = ring({"x", "y", "z"});
  EXPECT_THROW(construct_dim3(B, {B->parse("x"), B->parse("y"), B->parse("x + y")}), PreconditionError);
}

TEST(Construct, Dim1OverHigherDimensionFailsFiniteLength) {
  auto A = ring({"x", "y"});
  auto b = verify_periodic_package(construct_dim1(A, A->parse("x")));
  EXPECT_FALSE(b.ok());
  ASSERT_NE(b.first_failure(), nullptr);
  EXPECT_EQ(b.first_failure()->name, "finite length cohomology");
  EXPECT_FALSE(b.red_alert);
}

TEST(Construct2d, BetaIsPowerOfTwo) {
  for (int d = 1; d <= 3; ++d) {
    std::vector<const char*> names = {"x", "y", "z"};
    std::vector<Variable> vars;
    for (int i = 0; i < d; ++i) vars.push_back({names[i], 1});
    auto A = make_ring<K>(K(), vars, {});
    auto r = construct_2d(A);
    for (const auto& c : r.checks) EXPECT_TRUE(c.ok()) << d << " " << c.name << ": " << c.detail;
    expect_all_pass(r.bundle);
    EXPECT_EQ(r.bundle.beta, 1 << d);
    EXPECT_EQ(r.binomial_sum, 1L << d);
    EXPECT_EQ(r.betti_B[d], 1L << d);
    EXPECT_GE(r.split_index, d);
  }
}

TEST(Construct2d, BinomialOracle) {
  // beta_i of k over k[Y]/(Y^2) is 1, so the sum is 2^d
  for (int d = 0; d <= 6; ++d) {
    long s = 0;
    for (int i = 0; i <= d; ++i) s += binomial(d, i);
    EXPECT_EQ(s, 1L << d);
  }
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(3, 4), 0);
}

TEST(Construct2d, NeedsPolynomialRing) {
  EXPECT_THROW(construct_2d(ring({"x"}, {"x^2"})), PreconditionError);
}

TEST(Construct2d, FreshNameAvoidsClashes) {
  std::vector<Variable> v = {{"Y", 1}, {"Y_", 1}};
  EXPECT_EQ(fresh_name(v, "Y"), "Y__");
  auto A = ring({"Y"});
  auto r = construct_2d(A);
  EXPECT_EQ(r.B->base().variables().back().name, "Y_");
  EXPECT_EQ(r.bundle.beta, 2);
}

TEST(Invert, ConstantAndTwistedMatrices) {
  auto A = ring({"x", "y"});
  Matrix<K> m(2, 2);
  m(0, 0) = A->parse("1");
  m(0, 1) = A->parse("x");
  m(1, 1) = A->parse("2");
  FreeModule src({0, 1}), tgt({0, 1});
  auto inv = invert(*A, m, src, tgt);
  ASSERT_TRUE(inv.has_value());
  EXPECT_FALSE(first_nonzero(*A, sub(*A, mul(*A, *inv, m), identity_matrix(*A, 2))).has_value());
  Matrix<K> n(1, 1);
  n(0, 0) = A->parse("x");
  EXPECT_FALSE(invert(*A, n, FreeModule({1}), FreeModule({0})).has_value());
  // a degree offset: identity from degree 2 to degree 0
  Matrix<K> id = identity_matrix(*A, 1);
  EXPECT_EQ(degree_offset(*A, id, FreeModule({2}), FreeModule({0})), 2);
  EXPECT_TRUE(invert(*A, id, FreeModule({2}), FreeModule({0})).has_value());
}

TEST(Circularize, RelabeledPeriodicComplex) {
  std::mt19937 rng(7);
  for (int n : {2, 3}) {
    auto A = n == 2 ? ring({"x", "y"}) : ring({"x", "y", "z"});
    auto F = A->nvars() == 2 ? construct_dim2(A, gens(A), gens(A)) : construct_dim3(A, gens(A));
    auto rel = candidates::relabel(F, rng);
    ASSERT_TRUE(check_complex(rel.window).ok());
    ASSERT_TRUE(check_chain_map(rel.window, rel.window, rel.psi).ok());
    auto G = circularize(rel.window, rel.psi);
    EXPECT_TRUE(check_complex(G).ok());
    EXPECT_EQ(G.start, 1);
    // G = G[2] as data, with the twist as degree offset
    EXPECT_TRUE(same_periodic_data(G, shift(G, 2), G.twist));
    EXPECT_EQ(G.twist, F.twist);
    // H_Y = H^1(F) and H_X = H^2(F)
    for (int i : {1, 2}) {
      auto hg = cohomology_entry(G, i), hf = cohomology_entry(rel.window, i);
      ASSERT_TRUE(hg.finite_length && hf.finite_length);
      EXPECT_EQ(*hg.length, *hf.length) << i;
      EXPECT_EQ(hg.hilbert, hf.hilbert) << i;
    }
  }
}

TEST(Circularize, RejectsBadPsi) {
  std::mt19937 rng(3);
  auto A = ring({"x", "y"});
  auto rel = candidates::relabel(construct_dim2(A, gens(A), gens(A)), rng);
  auto psi = rel.psi;
  psi.shift = 1;
  EXPECT_THROW(circularize(rel.window, psi), InputError);
  psi = rel.psi;
  psi.components.erase(1);
  EXPECT_THROW(circularize(rel.window, psi), InputError);
  psi = rel.psi;
  psi.components[0] = Matrix<K>(2, 2);  // commutes only if d^2 psi = 0, and is not invertible
  EXPECT_THROW(circularize(rel.window, psi), MathError);
}

TEST(RandomSuite, RankLemmaAndBoundOverKxy) {
  auto A = ring({"x", "y"});
  auto r = candidates::run_suite(A, 50, 20261014);
  EXPECT_EQ(r.generated, 50);
  EXPECT_EQ(r.rank_violations, 0);
  EXPECT_EQ(r.red_alerts, 0);
  EXPECT_GT(r.verified, 0);
  for (int b : r.verified_betas) EXPECT_GE(b, 2);
  for (const auto& n : r.notes) ADD_FAILURE() << n;
}

TEST(RandomSuite, RankLemmaAndBoundOverKxyz) {
  auto A = ring({"x", "y", "z"});
  auto r = candidates::run_suite(A, 50, 1014);
  EXPECT_EQ(r.generated, 50);
  EXPECT_EQ(r.rank_violations, 0);
  EXPECT_EQ(r.red_alerts, 0);
  EXPECT_GT(r.verified, 0);
  for (int b : r.verified_betas) EXPECT_GE(b, 3);
}

TEST(RandomSuite, BoundStartsInDimensionTwo) {
  // over k[x] a beta = 1 complex is expected
  auto A = ring({"x"});
  auto b = verify_periodic_package(construct_dim1(A, A->parse("x")));
  EXPECT_FALSE(b.red_alert);
  for (const auto& c : b.checks) EXPECT_NE(c.name, "beta >= dim A");
}
