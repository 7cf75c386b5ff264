// Small hand-checkable examples, one per case.

#include <gtest/gtest.h>

#include "grlie/verify/verify.hpp"
#include "support.hpp"

using namespace grlie;
using namespace grlie::testing;

namespace {

std::vector<std::size_t> sz(std::initializer_list<std::size_t> v) { return v; }

std::vector<std::string> spelled(const Alphabet& a, int n) {
  std::vector<std::string> out;
  for (auto& w : lyndon_words(a, n)) out.push_back(a.spell(w));
  return out;
}

LieCoords coords_of(const Alphabet& a, const std::string& expr) {
  FreeLieAlgebra L(a);
  return L.lyndon_coords(parse_lie_element(a, expr));
}

}  // namespace

TEST(WorkedExamples, RowSpaces) {
  FpRowSpace f2(2, 2);
  f2.insert(std::vector<std::uint32_t>{1, 0});
  f2.insert(std::vector<std::uint32_t>{0, 1});
  EXPECT_TRUE(f2.contains(std::vector<std::uint32_t>{1, 1}));
  FpRowSpace f3(3, 2);
  f3.insert(std::vector<std::uint32_t>{1, 1});
  EXPECT_TRUE(f3.contains(std::vector<std::uint32_t>{2, 2}));
  EXPECT_FALSE(f3.contains(std::vector<std::uint32_t>{1, 0}));
  EXPECT_EQ(fp_rank(MatrixFp(5, 2, {{1, 2}, {2, 4}})), 1u);
}

TEST(WorkedExamples, SmithForms) {
  EXPECT_EQ(smith_normal_form(MatrixZ(2, {{1, 0}, {0, 1}})), (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(smith_normal_form(MatrixZ(2, {{2, 0}, {0, 6}})), (std::vector<BigInt>{2, 6}));
  EXPECT_EQ(smith_normal_form(MatrixZ(2, {{2, 4}, {4, 8}})), (std::vector<BigInt>{2}));
}

TEST(WorkedExamples, SeriesOperations) {
  auto a = PowerSeriesZ::from_ints(5, {1, -2});
  EXPECT_EQ(a * a.inverse(), PowerSeriesZ::one(5));
  EXPECT_EQ(PowerSeriesZ::from_ints(4, {1, -1}).pow(-2), PowerSeriesZ::from_ints(4, {1, 2, 3, 4, 5}));
  EXPECT_EQ(PowerSeriesZ::from_ints(4, {1, 1}).substitute_power(2), PowerSeriesZ::from_ints(4, {1, 0, 1}));
}

TEST(WorkedExamples, LyndonWords) {
  Alphabet ab = Alphabet::standard(2);
  EXPECT_EQ(spelled(ab, 3), (std::vector<std::string>{"aab", "abb"}));
  Alphabet a = Alphabet::standard(1);
  EXPECT_EQ(spelled(a, 1), (std::vector<std::string>{"a"}));
  EXPECT_TRUE(spelled(a, 2).empty());
  Alphabet az({"a", "z"}, {1, 2});
  EXPECT_EQ(spelled(az, 2), (std::vector<std::string>{"z"}));
}

TEST(WorkedExamples, StandardBracketings) {
  Alphabet a = Alphabet::standard(2);
  auto text = [&](const std::string& w) {
    std::vector<int> letters;
    for (char c : w) letters.push_back(c - 'a');
    return standard_bracketing(a, Word::from_letters(letters)).terms.front().first->to_string(a);
  };
  EXPECT_EQ(text("aab"), "[a,[a,b]]");
  EXPECT_EQ(text("ab"), "[a,b]");
  EXPECT_EQ(text("aabab"), "[[a,[a,b]],[a,b]]");
}

TEST(WorkedExamples, LyndonCoordinates) {
  Alphabet a = Alphabet::standard(2);
  AssocPoly e = expand_assoc(a, parse_lie_element(a, "[a,[a,b]]"));
  AssocPoly want;
  want.add(Word::from_letters({0, 0, 1}), 1);
  want.add(Word::from_letters({0, 1, 0}), -2);
  want.add(Word::from_letters({1, 0, 0}), 1);
  EXPECT_EQ(e, want);
  EXPECT_EQ(coords_of(a, "[a,[a,b]]"), (LieCoords{{0, 1}}));
  EXPECT_TRUE(coords_of(a, "[a,a]").empty());
  EXPECT_EQ(coords_of(a, "[b,a]"), (LieCoords{{0, -1}}));
  EXPECT_EQ(coords_of(a, "[[a,b],a]"), (LieCoords{{0, -1}}));
}

TEST(WorkedExamples, MagnusLeadingTerms) {
  Alphabet a = Alphabet::standard(2);
  FreeLieAlgebra L(a);
  auto c = magnus_leading_term(L, parse_group_word(a, "a b a^-1 b^-1"), 6);
  EXPECT_EQ(c.weight, 2);
  EXPECT_EQ(c.coords, (LieCoords{{0, 1}}));
  EXPECT_TRUE(c.primitive);
  auto sq = magnus_leading_term(L, parse_group_word(a, "a^2"), 6);
  EXPECT_EQ(sq.weight, 1);
  EXPECT_EQ(sq.coords, (LieCoords{{0, 2}}));
  EXPECT_FALSE(sq.primitive);
}

TEST(WorkedExamples, SurfaceRelator) {
  auto r = surface_presentation(2);
  EXPECT_EQ(r.weight, 2);
  EXPECT_TRUE(r.primitive);
  FreeLieAlgebra L(r.presentation.alphabet);
  const Alphabet& a = r.presentation.alphabet;
  EXPECT_EQ(lyndon_coords(L, r.presentation.relators[0]), coords_of(a, "[a1,b1] + [a2,b2]"));
  EXPECT_EQ(surface_presentation(1).presentation.relator_text.size(), 1u);
}

TEST(WorkedExamples, IdealSpans) {
  auto torus = LiePresentation::parse(Alphabet::standard(2), {"[a,b]"});
  EXPECT_EQ(ideal_degree_span(torus, 2).size(), 1u);
  EXPECT_EQ(ideal_degree_span(torus, 3).size(), 2u);
  EXPECT_EQ(ideal_degree_span(surface_presentation(2).presentation, 2).size(), 1u);
}

TEST(WorkedExamples, Quotients) {
  EXPECT_EQ(quotient_fp(free_presentation(2), 2, 4).dims(), sz({2, 1, 2, 3}));
  for (std::uint32_t p : {2u, 3u, 5u})
    EXPECT_EQ(quotient_fp(LiePresentation::parse(Alphabet::standard(2), {"[a,b]"}), p, 3).dims(), sz({2, 0, 0}));
  EXPECT_EQ(quotient_fp(surface_presentation(2).presentation, 3, 4).dims(), sz({4, 5, 16, 45}));
  EXPECT_TRUE(quotient_z(free_presentation(2), 5).is_gamma_free_up_to_N);
  EXPECT_TRUE(quotient_z(surface_presentation(2).presentation, 6).is_gamma_free_up_to_N);
}

TEST(WorkedExamples, Restrictifications) {
  EXPECT_EQ(restrictify(quotient_fp(free_presentation(2), 2, 4), 4).dims(), sz({2, 3, 2, 6}));
  EXPECT_EQ(restrictified_dims({1, 0, 0, 0, 0, 0, 0, 0, 0}, 3), sz({1, 0, 1, 0, 0, 0, 0, 0, 1}));
  auto torus = LiePresentation::parse(Alphabet::standard(2), {"[a,b]"});
  EXPECT_EQ(predicted_zassenhaus_dims(torus, 3, 9), sz({2, 0, 2, 0, 0, 0, 0, 0, 2}));
  auto R = restrictify(quotient_fp(heisenberg_presentation(), 2, 4), 4);
  std::vector<std::string> deg2, deg4;
  for (auto& l : R.labels(2)) deg2.push_back(l.text);
  for (auto& l : R.labels(4)) deg4.push_back(l.text);
  EXPECT_EQ(deg2.size(), 3u);
  EXPECT_EQ(deg4.size(), 3u);
  // The p-map sends each label to its next power.
  for (std::size_t a = 0; a < R.dim(1); ++a) {
    FpVec img = R.pmap_basis(1, a);
    ASSERT_EQ(img.size(), 1u);
    EXPECT_EQ(R.labels(2)[img[0].first].power, 1);
  }
}

TEST(WorkedExamples, HilbertSeries) {
  auto two = pbw_series(DimensionTable::from(std::vector<int>{2, 0, 0, 0, 0}), 5);
  EXPECT_EQ(two, PowerSeriesZ::from_ints(5, {1, -1}).pow(-2));
  EXPECT_EQ(jennings_polynomial(DimensionTable::from(std::vector<int>{1, 1}), 2), PowerSeriesZ::from_ints(3, {1, 1, 1, 1}));
  auto e = jennings_polynomial(DimensionTable::from(std::vector<int>{3}), 3);
  BigInt total = 0;
  for (std::size_t i = 0; i <= e.order(); ++i) total += e[i];
  EXPECT_EQ(total, 27);
  EXPECT_EQ(to_ll(jennings_invert(PowerSeriesZ::from_ints(4, {1, 2, 2, 2, 1}), 2).truncated(2)),
            (std::vector<long long>{2, 1}));
  auto x = DimensionTable::from(std::vector<int>{2, 1, 0, 0});
  EXPECT_EQ(to_ll(free_product_dims(x, DimensionTable::from(std::vector<int>{0, 0, 0, 0}), 4)), to_ll(x));
}

TEST(WorkedExamples, CatalogFamilies) {
  EXPECT_EQ(quotient_fp(free_presentation(1), 2, 3).dims(), sz({1, 0, 0}));
  std::vector<std::string> v{"a", "b", "c"};
  EXPECT_EQ(free_ranks(quotient_z(raag_presentation(v, {{"a", "b"}, {"b", "c"}, {"a", "c"}}), 3)),
            (std::vector<long long>{3, 0, 0}));
  EXPECT_EQ(free_ranks(quotient_z(raag_presentation(v, {}), 4)), to_ll(witt_dims(3, 4)));
  EXPECT_EQ(free_ranks(quotient_z(raag_presentation(v, {{"a", "b"}, {"b", "c"}}), 3)),
            (std::vector<long long>{3, 1, 2}));
  auto pb4 = almost_direct_dims({witt_dims(3, 3), witt_dims(2, 3), witt_dims(1, 3)}, 3);
  EXPECT_EQ(pb4.at(3), 10);
  EXPECT_EQ(labute_mild(5, 3).alphabet.size(), 5);
  EXPECT_EQ(quotient_fp(heisenberg_presentation(), 3, 4).dims(), sz({2, 1, 0, 0}));
}

TEST(WorkedExamples, FiniteGroups) {
  EXPECT_EQ(build_group(unitriangular_spec(3, 3)).size(), 27u);
  EXPECT_EQ(build_group(unitriangular_spec(3, 9)).size(), 729u);
  FinitePGroup C4 = build_group(cayley_spec({{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}}));
  EXPECT_EQ(C4.size(), 4u);
  EXPECT_EQ(power_subgroup(C4, whole_group(C4), 2).elements, (std::vector<std::uint32_t>{0, 2}));
  FinitePGroup E = build_group(heisenberg_zp(3, 3));
  EXPECT_EQ(commutator_subgroup(E, whole_group(E), whole_group(E)).size(), 3u);
}

TEST(WorkedExamples, VerificationEdgeCases) {
  FinitePGroup Z4 = build_group(abelian_spec({4}));
  EXPECT_THROW(corollary_exponent_p(free_presentation(1), Z4, 2, 3), InputError);
  FinitePGroup A = build_group(abelian_spec({4, 2}));
  EXPECT_TRUE(hall_prop_check(A, 2, 100).passed());
  FinitePGroup E = build_group(heisenberg_zp(3, 3));
  auto r = theorem_a_check(heisenberg_presentation(), E, 3, 3);
  EXPECT_EQ(r.rows[2].predicted, 2);
  EXPECT_EQ(r.rows[2].oracle, 0);
  EXPECT_EQ(r.rows[2].verdict, "strict");
  auto ab = corollary_abelian_restricted(restrictify(quotient_fp(heisenberg_presentation(), 2, 4), 4));
  EXPECT_EQ(ab.rows[0].oracle, 2);
  EXPECT_EQ(ab.rows[1].oracle, 2);
  EXPECT_EQ(ab.rows[3].oracle, 2);
}
