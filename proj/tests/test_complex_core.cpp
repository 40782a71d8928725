#include <gtest/gtest.h>

#include "cmperiodica/complex.hpp"
#include "cmperiodica/constructions.hpp"

using namespace cmperiodica;

namespace {

using K = PrimeField;

RingPtr<K> ring(std::initializer_list<const char*> vars, const std::vector<std::string>& rel = {}) {
  return make_ring<K>(K(), standard_vars(vars), rel);
}

Matrix<K> mat(const RingPtr<K>& A, int r, int c, const std::vector<std::string>& e) {
  Matrix<K> m(r, c);
  for (int i = 0; i < r * c; ++i) m.entries[i] = A->parse(e[i]);
  return m;
}

FreeComplex<K> dim2_xy() {
  auto A = ring({"x", "y"});
  const auto& Q = A->base();
  return construct_dim2(A, {Q.var(0), Q.var(1)}, {Q.var(0), Q.var(1)});
}

}  // namespace

TEST(FreeComplex, PeriodicModulesCarryTheTwist) {
  auto F = dim2_xy();
  ASSERT_TRUE(F.is_periodic());
  for (int i = -4; i <= 4; ++i) {
    EXPECT_EQ(F.module(i + 2), F.module(i).twisted(F.twist)) << i;
    EXPECT_EQ(F.differential(i + 2), F.differential(i)) << i;
  }
}

TEST(FreeComplex, WindowIsZeroOutside) {
  auto A = ring({"x", "y"});
  auto F = koszul(A, {A->base().var(0), A->base().var(1)});
  EXPECT_EQ(F.start, -2);
  EXPECT_EQ(F.rank(-3), 0);
  EXPECT_EQ(F.rank(1), 0);
  EXPECT_EQ(F.rank(-1), 2);
  EXPECT_EQ(F.differential(3).rows, 0);
}

TEST(CheckComplex, KoszulComplexesSquareToZero) {
  auto A = ring({"x", "y", "z"});
  const auto& Q = A->base();
  auto F = koszul(A, {Q.var(0), Q.var(1), Q.var(2)});
  EXPECT_TRUE(check_complex(F).ok());
  EXPECT_TRUE(is_minimal(F));
  // a repeated element still gives a complex
  auto G = koszul(A, {Q.var(0), Q.var(0)});
  EXPECT_TRUE(check_complex(G).ok());
}

TEST(CheckComplex, ReportsFailingEntry) {
  auto F = dim2_xy();
  F.maps[1](0, 0) = F.ring->base().add(F.maps[1](0, 0), F.ring->parse("x*y"));
  Check c = check_complex(F);
  EXPECT_FALSE(c.ok());
  EXPECT_EQ(c.name, "d^2 = 0");
  EXPECT_NE(c.detail.find("entry"), std::string::npos);
}

TEST(CheckComplex, PeriodicPairsAreChecked) {
  auto A = ring({"x", "y"});
  auto F = make_periodic(A, {FreeModule({0}), FreeModule({0})}, {mat(A, 1, 1, {"0"}), mat(A, 1, 1, {"x"})}, -1);
  EXPECT_TRUE(check_complex(F).ok());
  auto G = make_periodic(A, {FreeModule({0}), FreeModule({-1})}, {mat(A, 1, 1, {"y"}), mat(A, 1, 1, {"x"})}, -2);
  EXPECT_FALSE(check_complex(G).ok());
}

TEST(CheckStructure, ShapeAndHomogeneityErrors) {
  auto A = ring({"x", "y"});
  auto F = dim2_xy();
  F.maps[0] = Matrix<K>(3, 2);
  Check c = check_complex(F);
  EXPECT_EQ(c.name, "structure");
  EXPECT_FALSE(c.ok());

  auto G = make_window(A, 0, {FreeModule({0}), FreeModule({-1})}, {mat(A, 1, 1, {"x + y^2"})});
  c = check_complex(G);
  EXPECT_EQ(c.name, "structure");
  EXPECT_FALSE(c.ok());

  auto H = make_window(A, 0, {FreeModule({0}), FreeModule({-1})}, {});
  EXPECT_FALSE(check_structure(H).ok());

  FreeComplex<K> P = dim2_xy();
  P.maps.pop_back();
  EXPECT_FALSE(check_structure(P).ok());
}

TEST(CheckStructure, DegreeConventionIsSourceMinusTarget) {
  auto A = ring({"x"});
  // x maps a generator of degree 0 to one of degree -1
  auto ok = make_window(A, 0, {FreeModule({0}), FreeModule({-1})}, {mat(A, 1, 1, {"x"})});
  EXPECT_TRUE(check_structure(ok).ok());
  auto bad = make_window(A, 0, {FreeModule({0}), FreeModule({1})}, {mat(A, 1, 1, {"x"})});
  EXPECT_FALSE(check_structure(bad).ok());
}

TEST(Shift, NegatesOddShifts) {
  auto F = dim2_xy();
  const auto& A = *F.ring;
  auto G = shift(F, 1);
  for (int i = -2; i <= 2; ++i) {
    EXPECT_EQ(G.module(i), F.module(i + 1));
    EXPECT_EQ(G.differential(i), scale(A, F.differential(i + 1), A.field().neg(A.field().one())));
  }
  EXPECT_TRUE(check_complex(G).ok());
  auto H = shift(F, 2);
  for (int i = -2; i <= 2; ++i) EXPECT_EQ(H.differential(i), F.differential(i + 2));
}

TEST(Rebase, KeepsTheComplexAsAFunctionOfIndex) {
  auto F = dim2_xy();
  auto G = rebase(F, 5);
  EXPECT_EQ(G.start, 5);
  for (int i = -3; i <= 7; ++i) {
    EXPECT_EQ(G.module(i), F.module(i));
    EXPECT_EQ(G.differential(i), F.differential(i));
  }
  EXPECT_THROW(rebase(koszul(F.ring, {F.ring->base().var(0)}), 1), PreconditionError);
}

TEST(SamePeriodicData, DetectsDifferences) {
  auto F = dim2_xy();
  EXPECT_TRUE(same_periodic_data(F, F));
  EXPECT_TRUE(same_periodic_data(F, rebase(F, 1)));
  auto G = F;
  for (auto& m : G.modules) m = m.twisted(3);
  EXPECT_FALSE(same_periodic_data(F, G));
  EXPECT_TRUE(same_periodic_data(F, G, 3));
  auto H = shift(F, 1);
  EXPECT_FALSE(same_periodic_data(F, H));
}

TEST(Minimality, ConstantEntriesAreDetected) {
  auto A = ring({"x"});
  EXPECT_TRUE(is_minimal_matrix(*A, mat(A, 1, 2, {"x", "0"})));
  EXPECT_FALSE(is_minimal_matrix(*A, mat(A, 1, 2, {"x", "3"})));
}

TEST(RankLemma, SkipsWithoutHypotheses) {
  auto A = ring({"x"}, {"x^2"});
  auto F = make_periodic(A, {FreeModule({0}), FreeModule({-1})}, {mat(A, 1, 1, {"x"}), mat(A, 1, 1, {"x"})}, -2);
  EXPECT_TRUE(check_complex(F).ok());
  EXPECT_EQ(check_rank_lemma(F, true).status, Status::skipped);  // dim A = 0
  auto B = ring({"x", "y"});
  auto G = construct_dim1(B, B->base().var(0));
  EXPECT_EQ(check_rank_lemma(G, false).status, Status::skipped);
}

TEST(RankLemma, FlagsUnequalRanks) {
  auto A = ring({"x", "y"});
  auto F = make_periodic(A, {FreeModule({0}), FreeModule({0, 0})}, {Matrix<K>(2, 1), Matrix<K>(1, 2)}, 0);
  Check c = check_rank_lemma(F, true);
  EXPECT_FALSE(c.ok());
  EXPECT_NE(c.detail.find("contradicts"), std::string::npos);
  EXPECT_THROW(beta_of_periodic(F), PreconditionError);
}

TEST(ChainMap, MultiplicationByARingElement) {
  auto A = ring({"x", "y"});
  auto F = construct_dim1(A, A->base().var(0));
  ChainMap<K> phi;
  for (int i = 0; i < 3; ++i) phi.components[i] = mat(A, 1, 1, {"y"});
  EXPECT_TRUE(check_chain_map(F, F, phi).ok());
  phi.components[2] = mat(A, 1, 1, {"x"});
  EXPECT_FALSE(check_chain_map(F, F, phi).ok());
}

TEST(ChainMap, ShapeMismatch) {
  auto F = dim2_xy();
  ChainMap<K> phi;
  phi.components[0] = Matrix<K>(1, 2);
  EXPECT_FALSE(check_chain_map(F, F, phi).ok());
}

TEST(Koszul, SubsetsAndModules) {
  auto s = subsets_of_size(4, 2);
  EXPECT_EQ(s.size(), 6u);
  EXPECT_EQ(s.front(), (std::vector<int>{0, 1}));
  EXPECT_EQ(s.back(), (std::vector<int>{2, 3}));
  auto A = make_ring<K>(K(), {{"x", 1}, {"y", 2}}, {});
  auto m = koszul_module(*A, {A->base().var(0), A->base().var(1)}, 1);
  EXPECT_EQ(m.degrees, (std::vector<int>{1, 2}));
  EXPECT_THROW(koszul(A, {A->parse("x + y")}), InputError);
}
