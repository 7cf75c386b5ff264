#include <gtest/gtest.h>

#include <random>

#include "grlie/catalog/catalog.hpp"
#include "grlie/pgroup/pgroup.hpp"
#include "support.hpp"

using namespace grlie;
using namespace grlie::testing;

TEST(Builders, Orders) {
  EXPECT_EQ(build_group(abelian_spec({4})).size(), 4u);
  EXPECT_EQ(build_group(abelian_spec({2, 2, 2})).size(), 8u);
  EXPECT_EQ(build_group(quaternion_spec()).size(), 8u);
  EXPECT_EQ(build_group(heisenberg_zp(3, 3)).size(), 27u);
  EXPECT_EQ(build_group(heisenberg_zp(3, 9)).size(), 729u);
  EXPECT_EQ(build_group(unitriangular_spec(4, 2)).size(), 64u);
}

TEST(Builders, QuaternionHasUniqueInvolution) {
  FinitePGroup G = build_group(quaternion_spec());
  int involutions = 0;
  for (std::uint32_t x = 0; x < G.size(); ++x)
    if (x != G.identity() && G.mul(x, x) == G.identity()) ++involutions;
  EXPECT_EQ(involutions, 1);
}

TEST(Builders, RejectsBadInput) {
  EXPECT_THROW(build_group(abelian_spec({6})), InputError);
  // Latin square that is not associative: the loop of order 5 below.
  std::vector<std::vector<std::uint32_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(build_group(cayley_spec(loop)), InputError);
  std::vector<std::vector<std::uint32_t>> not_latin{{0, 1}, {1, 1}};
  EXPECT_THROW(build_group(cayley_spec(not_latin)), InputError);
  GroupSpec infinite;
  infinite.family = "free";
  EXPECT_THROW(build_group(infinite), InputError);
}

TEST(Builders, BudgetExceeded) {
  EXPECT_THROW(build_group(heisenberg_zp(3, 27)), BudgetExceeded);
  EXPECT_EQ(build_group(heisenberg_zp(3, 27), ladder_cap()).size(), 19683u);
}

TEST(Subgroups, LowerCentralSeriesOfHeisenberg) {
  FinitePGroup G = build_group(heisenberg_zp(3, 9));
  auto g = lower_central(G, 4);
  EXPECT_EQ(g[1].size(), 729u);
  EXPECT_EQ(g[2].size(), 9u);
  EXPECT_EQ(g[3].size(), 1u);
  EXPECT_TRUE(is_normal(G, g[2]));
}

TEST(Subgroups, CommutatorNeedsNormalSubgroups) {
  FinitePGroup G = build_group(heisenberg_zp(3, 3));
  Subgroup H = closure(G, {G.generators()[0]});
  EXPECT_FALSE(is_normal(G, H));
  EXPECT_THROW(commutator_subgroup(G, H, whole_group(G)), std::logic_error);
}

TEST(DimensionSeries, FullAugmentationPathAgreesWithFastPath) {
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    if (G.size() > 64) continue;
    int len = dimension_series_length(G, g.p);
    auto fast = dimension_series_augmentation(G, g.p, len);
    auto full = dimension_series_augmentation(G, g.p, len, AugmentationPath::AllElements);
    EXPECT_EQ(fast.omega_dims, full.omega_dims) << g.name;
    for (int n = 1; n <= len; ++n) EXPECT_TRUE(fast.D[n] == full.D[n]) << g.name << " n=" << n;
  }
}

TEST(DimensionSeries, ProductEqualsAugmentationOnExtraGroups) {
  for (auto spec : {unitriangular_spec(4, 2), abelian_spec({8, 2}), heisenberg_zp(2, 8)}) {
    FinitePGroup G = build_group(spec);
    int len = dimension_series_length(G, 2);
    auto prod = dimension_series_product(G, 2, len);
    auto aug = dimension_series_augmentation(G, 2, len);
    for (int n = 1; n <= len; ++n) EXPECT_TRUE(prod[n] == aug.D[n]) << "n=" << n;
  }
}

TEST(DimensionSeries, KnownZassenhausDims) {
  auto dims = [](const GroupSpec& s, std::uint32_t p) {
    FinitePGroup G = build_group(s);
    return zassenhaus_structure(G, p, dimension_series_length(G, p) - 1).d;
  };
  EXPECT_EQ(dims(abelian_spec({4}), 2), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(dims(abelian_spec({9}), 3), (std::vector<std::size_t>{1, 0, 1}));
  EXPECT_EQ(dims(quaternion_spec(), 2), (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(dims(heisenberg_zp(2, 8), 2), (std::vector<std::size_t>{2, 3, 0, 3, 0, 0, 0, 1}));
}

TEST(Zassenhaus, RepresentativeChoiceDoesNotChangeTables) {
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    int N = dimension_series_length(G, g.p) - 1;
    if (N < 1) continue;
    auto a = zassenhaus_structure(G, g.p, N, RepresentativeRule::SmallestIndex);
    auto b = zassenhaus_structure(G, g.p, N, RepresentativeRule::Shifted);
    ASSERT_EQ(a.d, b.d);
    for (int i = 1; i <= N; ++i) {
      for (int j = 1; i + j <= N; ++j)
        for (std::size_t x = 0; x < a.d[i - 1]; ++x)
          for (std::size_t y = 0; y < a.d[j - 1]; ++y)
            EXPECT_EQ(a.algebra.bracket_basis(i, x, j, y), b.algebra.bracket_basis(i, x, j, y)) << g.name;
      if (static_cast<long>(i) * g.p <= N)
        for (std::size_t x = 0; x < a.d[i - 1]; ++x)
          EXPECT_EQ(a.algebra.pmap_basis(i, x), b.algebra.pmap_basis(i, x)) << g.name;
    }
  }
}

// Property: group commutators and p-th powers of random elements land on the
// bracket and p-map of their classes.
TEST(Zassenhaus, GroupOperationsMatchAlgebra) {
  std::mt19937_64 rng(77);
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    int N = dimension_series_length(G, g.p) - 1;
    if (N < 1) continue;
    auto Z = zassenhaus_structure(G, g.p, N);
    for (int t = 0; t < 40; ++t) {
      int i = 1 + static_cast<int>(rng() % N);
      const Subgroup& Di = Z.D[i];
      std::uint32_t x = Di.elements[rng() % Di.size()];
      if (static_cast<long>(i) * g.p <= N)
        EXPECT_EQ(Z.class_of(G.pow(x, g.p), i * g.p), Z.algebra.p_map(Z.class_of(x, i), i)) << g.name;
      int j = 1 + static_cast<int>(rng() % N);
      if (i + j > N) continue;
      std::uint32_t y = Z.D[j].elements[rng() % Z.D[j].size()];
      EXPECT_EQ(Z.class_of(G.comm(x, y), i + j), Z.algebra.bracket(Z.class_of(x, i), i, Z.class_of(y, j), j))
          << g.name;
    }
  }
}

TEST(Zassenhaus, JenningsFormulaSumsToOrder) {
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    auto Z = zassenhaus_structure(G, g.p, dimension_series_length(G, g.p) - 1);
    std::size_t log = 0;
    for (auto d : Z.d) log += d;
    EXPECT_EQ(static_cast<int>(log), G.log_order()) << g.name;
  }
}
