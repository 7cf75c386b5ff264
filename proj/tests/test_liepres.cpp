#include <gtest/gtest.h>

#include <random>

#include "grlie/catalog/catalog.hpp"
#include "grlie/liepres/liepres.hpp"
#include "support.hpp"

using namespace grlie;
using namespace grlie::testing;

TEST(QuotientFp, FreeAlgebraHasWittDims) {
  for (std::uint32_t p : {2u, 3u, 7u}) {
    auto L = quotient_fp(free_presentation(3), p, 5);
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(BigInt(L.dim(n)), witt_rank(3, n));
  }
}

TEST(QuotientFp, HeisenbergDims) {
  auto L = quotient_fp(heisenberg_presentation(), 3, 5);
  std::vector<std::size_t> want{2, 1, 0, 0, 0};
  EXPECT_EQ(L.dims(), want);
}

TEST(QuotientFp, BasisIsLexEarliestLyndonWords) {
  auto L = quotient_fp(LiePresentation::parse(Alphabet::standard(2), {"[[a,b],b]"}), 2, 3);
  ASSERT_EQ(L.dim(3), 1u);
  EXPECT_EQ(L.labels(3)[0], "aab");
}

// Property: brackets are antisymmetric and satisfy Jacobi in the quotient.
TEST(QuotientFp, JacobiInQuotient) {
  auto L = quotient_fp(pure_braid_presentation(4), 5, 5);
  PrimeField F(5);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    int i = 1 + static_cast<int>(rng() % 2), j = 1 + static_cast<int>(rng() % 2), k = 1;
    FpVec x = random_vec(rng, 5, L.dim(i)), y = random_vec(rng, 5, L.dim(j)), z = random_vec(rng, 5, L.dim(k));
    FpVec xy = L.bracket(x, i, y, j), yx = L.bracket(y, j, x, i);
    EXPECT_TRUE(fpvec::add(F, xy, yx).empty());
    FpVec jac = L.bracket(x, i, L.bracket(y, j, z, k), j + k);
    jac = fpvec::add(F, jac, L.bracket(y, j, L.bracket(z, k, x, i), k + i));
    jac = fpvec::add(F, jac, L.bracket(z, k, L.bracket(x, i, y, j), i + j));
    EXPECT_TRUE(jac.empty());
  }
}

TEST(QuotientFp, ProjectionIsLinearAndKillsRelators) {
  auto pres = heisenberg_presentation();
  auto L = quotient_fp(pres, 2, 3);
  const auto* data = L.presentation();
  ASSERT_NE(data, nullptr);
  for (auto& r : pres.relators) EXPECT_TRUE(L.project(r.degree, lyndon_coords(*data->free, r)).empty());
}

TEST(QuotientZ, TorsionDetected) {
  auto pres = LiePresentation::parse(Alphabet::standard(2), {"2*[a,b]"});
  auto inv = quotient_z(pres, 3);
  EXPECT_FALSE(inv.is_gamma_free_up_to_N);
  ASSERT_EQ(inv.degrees[1].torsion.size(), 1u);
  EXPECT_EQ(inv.degrees[1].torsion[0], 2);
  EXPECT_EQ(inv.fp_dim(2, 2), 1u);  // Z/2 survives mod 2
  EXPECT_EQ(inv.fp_dim(2, 3), 0u);
}

TEST(QuotientZ, FreeRanksAgreeWithFpDimsWhenTorsionFree) {
  auto pres = raag_presentation({"a", "b", "c"}, {{"a", "b"}});
  auto inv = quotient_z(pres, 5);
  ASSERT_TRUE(inv.is_gamma_free_up_to_N);
  auto L = quotient_fp(pres, 3, 5);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(inv.degrees[n - 1].free_rank, L.dim(n));
}

TEST(Presentation, RejectsUnknownGeneratorAndLinearRelator) {
  EXPECT_THROW(LiePresentation::parse(Alphabet::standard(2), {"[a,c]"}), InputError);
  EXPECT_THROW(LiePresentation::parse(Alphabet::standard(2), {"a"}), InputError);
  EXPECT_THROW(LiePresentation::parse(Alphabet::standard(2), {"[a,b] + a"}), InputError);
}
