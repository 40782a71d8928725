#include <gtest/gtest.h>

#include "cmperiodica/support_variety.hpp"

using namespace cmperiodica;

namespace {

using K = PrimeField;

RingPtr<K> ci(const std::vector<std::string>& rel) { return make_ring<K>(K(), standard_vars({"x", "y"}), rel); }

ModulePresentation<K> cyc(const RingPtr<K>& A, const char* f) { return cyclic_module(A, {A->parse(f)}); }

// rank of a family of operator polynomials of t-degree m, as coefficient vectors
long span_rank(const PolyRing<K>& T, int m, const std::vector<Poly<K>>& ps) {
  const auto monos = monomials_of_degree(T, 2 * m);
  DenseMatrix<K> M(T.field(), static_cast<int>(monos.size()), static_cast<int>(ps.size()));
  for (std::size_t c = 0; c < ps.size(); ++c)
    for (const auto& t : ps[c].terms)
      for (std::size_t r = 0; r < monos.size(); ++r)
        if (monos[r] == t.mono) M(static_cast<int>(r), static_cast<int>(c)) = t.coeff;
  return dense_rank(T.field(), M);
}

}  // namespace

TEST(Variety, ResidueFieldPair) {
  auto A = ci({"x^2", "y^2"});
  auto k = residue_field_module(A);
  auto r = variety(k, k, 12);
  EXPECT_EQ(r.codim, 2);
  EXPECT_EQ(r.dim_affine, 2);
  EXPECT_EQ(r.dim_projective, 1);
  EXPECT_TRUE(r.annihilator.empty());
  EXPECT_FALSE(r.provisional) << r.diagnostics;
  ASSERT_TRUE(r.cx.has_value());
  EXPECT_EQ(r.cx->complexity, 2);
}

TEST(Variety, HypersurfaceQuotientAgainstK) {
  auto A = ci({"x^2", "y^2"});
  auto r = variety(cyc(A, "x"), residue_field_module(A), 12);
  EXPECT_EQ(r.dim_affine, 1);
  EXPECT_EQ(r.dim_projective, 0);
  // t_1 (from x^2) acts invertibly on Ext(A/(x), k) and t_2 (from y^2) acts by zero
  EXPECT_EQ(r.annihilator, (std::vector<std::string>{"t2"}));
  EXPECT_EQ(r.generator_degrees, (std::vector<int>{1}));
  ASSERT_TRUE(r.cx.has_value());
  EXPECT_EQ(r.cx->complexity, 1);
}

TEST(Variety, DisjointSupports) {
  auto A = ci({"x^2", "y^2"});
  auto r = variety(cyc(A, "x"), cyc(A, "y"), 12);
  EXPECT_EQ(r.dim_affine, 0);
  EXPECT_EQ(r.dim_projective, -1);
  EXPECT_EQ(r.annihilator.size(), 2u);
}

TEST(Variety, FreeSecondArgument) {
  auto A = ci({"x^2", "y^2"});
  auto r = variety(residue_field_module(A), free_module(A, FreeModule::uniform(1)), 12);
  EXPECT_EQ(r.dim_affine, 0);
}

TEST(Variety, InvariantUnderPermutedRelations) {
  auto A = ci({"x^2", "y^2"}), B = ci({"y^2", "x^2"});
  for (const char* f : {"x", "y", "x + y"}) {
    auto a = variety(cyc(A, f), residue_field_module(A), 12);
    auto b = variety(cyc(B, f), residue_field_module(B), 12);
    EXPECT_EQ(a.dim_affine, b.dim_affine) << f;
    EXPECT_EQ(a.generator_degrees, b.generator_degrees) << f;
  }
  // the annihilator follows the relation that x^2 became
  EXPECT_EQ(variety(cyc(B, "x"), residue_field_module(B), 12).annihilator, (std::vector<std::string>{"t1"}));
}

TEST(Variety, DimensionMatchesComplexityOnCodimTwoModels) {
  for (auto rel : std::vector<std::vector<std::string>>{{"x^2", "y^2"}, {"x^2", "y^3"}, {"x^2 + y^2", "x*y"}}) {
    auto A = ci(rel);
    for (const char* f : {"x", "y", "x*y"}) {
      auto r = variety(cyc(A, f), residue_field_module(A), 12);
      ASSERT_TRUE(r.cx && r.cx->complexity) << rel[0] << " " << f;
      EXPECT_EQ(r.dim_affine, *r.cx->complexity) << rel[0] << " " << f;
    }
  }
}

TEST(Variety, SmallWindowIsProvisional) {
  auto A = ci({"x^2", "y^2"});
  auto k = residue_field_module(A);
  auto r = variety(k, k, 5);
  EXPECT_TRUE(r.provisional);
  EXPECT_FALSE(r.cx.has_value());
}

TEST(AnnihilatorWindow, PiecesShrinkAsTheWindowGrows) {
  auto A = ci({"x^2", "y^2"});
  for (const char* f : {"x", "x*y", "x + y"}) {
    auto U = cyc(A, f);
    auto k = residue_field_module(A);
    auto small = annihilator_window(ext_window(U, k, 8));
    auto large = annihilator_window(ext_window(U, k, 10));
    for (int m = 0; m <= std::min(small.max_degree, large.max_degree); ++m) {
      // every element annihilating the larger window annihilates the smaller one
      std::vector<Poly<K>> both = small.pieces[m];
      both.insert(both.end(), large.pieces[m].begin(), large.pieces[m].end());
      EXPECT_EQ(span_rank(small.T, m, both), span_rank(small.T, m, small.pieces[m])) << f << " m=" << m;
    }
  }
}

TEST(AnnihilatorWindow, PiecesAreClosedUnderMultiplication) {
  auto A = ci({"x^2", "y^2"});
  auto W = annihilator_window(ext_window(cyc(A, "x"), residue_field_module(A), 12));
  for (int m = 0; m + 1 <= W.max_degree; ++m)
    for (const auto& p : W.pieces[m])
      for (int j = 0; j < W.T.nvars(); ++j) {
        std::vector<Poly<K>> with = W.pieces[m + 1];
        with.push_back(W.T.mul(W.T.var(j), p));
        EXPECT_EQ(span_rank(W.T, m + 1, with), span_rank(W.T, m + 1, W.pieces[m + 1]));
      }
}

TEST(AnnihilatorWindow, ResidueExtGenerationDegrees) {
  auto A = ci({"x^2", "y^2"});
  auto k = residue_field_module(A);
  auto W = annihilator_window(ext_window(k, k, 12));
  // Ext(k, k) is generated over k[t1, t2] in degrees 0, 1, 2
  EXPECT_EQ(W.generation_degree, 2);
  EXPECT_TRUE(W.generation_certified);
  EXPECT_TRUE(W.stable);
}

TEST(Identities, HoldOnCodimTwoExamples) {
  auto A = ci({"x^2", "y^2"});
  auto k = residue_field_module(A);
  const std::vector<std::pair<ModulePresentation<K>, ModulePresentation<K>>> pairs = {
      {k, k}, {cyc(A, "x"), k}, {cyc(A, "x"), cyc(A, "y")}, {cyc(A, "x + y"), cyc(A, "x")}};
  for (const auto& [U, V] : pairs) {
    auto rep = variety_identities_check(U, V, 12);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.ok()) << c.name << ": " << c.detail;
  }
}

TEST(Identities, RadicalContainment) {
  PolyRing<K> T = operator_ring(K(), 2);
  std::vector<Poly<K>> a = groebner(T, {T.parse("t1^2"), T.parse("t1*t2")});
  std::vector<Poly<K>> b = groebner(T, {T.parse("t1")});
  EXPECT_TRUE(radical_contained(T, a, b, 4));
  EXPECT_TRUE(radical_contained(T, b, a, 4));
  std::vector<Poly<K>> c = groebner(T, {T.parse("t2")});
  EXPECT_FALSE(radical_contained(T, b, c, 4));
}

TEST(Variety, RejectsNonCompleteIntersection) {
  auto A = ci({"x^2", "x*y", "y^2"});
  auto k = residue_field_module(A);
  EXPECT_THROW(variety(k, k, 8), PreconditionError);
}

TEST(Variety, ResidueFieldDetection) {
  auto A = ci({"x^2", "y^2"});
  EXPECT_TRUE(is_residue_field(residue_field_module(A)));
  EXPECT_TRUE(is_residue_field(cyclic_module(A, {A->parse("x + y"), A->parse("y")})));
  EXPECT_FALSE(is_residue_field(cyc(A, "x")));
}
