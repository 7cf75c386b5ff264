// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grlie/verify/verify.hpp"
#include "support.hpp"

using namespace grlie;
using namespace grlie::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string join(const std::vector<long long>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

Outcome witt_lyndon() {
  Outcome o;
  for (int k = 1; k <= 4; ++k)
    for (int n = 1; n <= 10; ++n) {
      auto words = lyndon_words(Alphabet::standard(k), n);
      for (auto& w : words)
        if (!is_lyndon(w)) o.fail("non-Lyndon word emitted");
      if (witt_rank(k, n) != BigInt(words.size()))
        o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
  o.detail = o.ok ? "k<=4, n<=10" : o.detail;
  return o;
}

Outcome pbw_identity() {
  Outcome o;
  for (int k : {2, 3}) {
    PowerSeriesZ s = pbw_series(witt_dims(k, 12), 12);
    BigInt c = 1;
    for (int i = 0; i <= 12; ++i, c *= k)
      if (s[i] != c) o.fail("coefficient " + std::to_string(i) + " for k=" + std::to_string(k));
  }
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    std::vector<long long> d(30);
    for (auto& x : d) x = static_cast<long long>(rng() % 6);
    auto table = DimensionTable::from(d);
    if (to_ll(pbw_invert(pbw_series(table, 30))) != d) o.fail("round trip failed on table " + join(d));
  }
  if (o.ok) o.detail = "k in {2,3} to t^12; 50 round trips at N=30";
  return o;
}

Outcome jennings_equality() {
  Outcome o;
  int groups = 0;
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    int len = dimension_series_length(G, g.p);
    auto prod = dimension_series_product(G, g.p, len);
    auto aug = dimension_series_augmentation(G, g.p, len);
    for (int n = 1; n <= len; ++n)
      if (!(prod[n] == aug.D[n])) o.fail(g.name + " differs at n=" + std::to_string(n));
    ++groups;
  }
  if (o.ok) o.detail = std::to_string(groups) + " groups, all n up to trivial D_n";
  return o;
}

Outcome jennings_series_check() {
  Outcome o;
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    int len = dimension_series_length(G, g.p);
    auto aug = dimension_series_augmentation(G, g.p, len);
    ZassenhausData Z = zassenhaus_structure(G, g.p, len - 1);
    PowerSeriesZ poly = jennings_polynomial(DimensionTable::from(Z.d), g.p);
    BigInt total = 0;
    for (std::size_t i = 0; i <= poly.order(); ++i) {
      total += poly[i];
      BigInt omega_graded = i + 1 < aug.omega_dims.size()
                                ? BigInt(aug.omega_dims[i] - aug.omega_dims[i + 1])
                                : BigInt(i < aug.omega_dims.size() ? aug.omega_dims[i] : 0);
      if (poly[i] != omega_graded) o.fail(g.name + " coefficient " + std::to_string(i));
    }
    if (total != BigInt(G.size())) o.fail(g.name + " coefficients do not sum to |G|");
  }
  if (o.ok) o.detail = "all suite groups";
  return o;
}

Outcome theorem_b() {
  Outcome o;
  struct Case {
    std::uint32_t p;
    std::vector<std::int64_t> moduli;
    int N;
    std::vector<long> expect;
  };
  for (const Case& c : {Case{2, {8, 16}, 4, {2, 3, 0, 3}}, Case{3, {9, 27}, 3, {2, 1, 2}}}) {
    std::vector<GroupSpec> ladder;
    for (auto m : c.moduli) ladder.push_back(heisenberg_zp(c.p, m));
    VerificationReport r = theorem_b_certify(heisenberg_presentation(), ladder, c.p, c.N);
    const std::string tag = "p=" + std::to_string(c.p);
    if (!r.passed) o.fail(tag + " report failed");
    for (int n = 1; n <= c.N; ++n) {
      const DegreeRow& row = r.rows[n - 1];
      if (row.predicted != c.expect[n - 1]) o.fail(tag + " predicted mismatch at " + std::to_string(n));
      if (row.verdict != "equal") o.fail(tag + " degree " + std::to_string(n) + " is " + row.verdict);
    }
    if (!homomorphism_ok(r.homomorphism, c.N)) o.fail(tag + " homomorphism check: " + r.homomorphism.failure);
  }
  if (o.ok) o.detail = "(2,3,0,3) at p=2 and (2,1,2) at p=3 equal on all degrees";
  return o;
}

Outcome theorem_a() {
  Outcome o;
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    int N = std::max(dimension_series_length(G, g.p), 4);
    VerificationReport r = theorem_a_check(g.presentation, G, g.p, N, g.name);
    if (!r.passed) o.fail(g.name + (r.notes.empty() ? std::string(" violation") : ": " + r.notes.front()));
  }
  for (std::uint32_t p : {2u, 3u}) {
    FinitePGroup G = build_group(abelian_spec({p * p}));
    int N = static_cast<int>(p * p * p);
    VerificationReport r = theorem_a_check(free_presentation(1), G, p, N);
    for (int n = 1; n <= N; ++n) {
      bool high_power = n == static_cast<int>(p * p) || n == static_cast<int>(p * p * p);
      bool strict = r.rows[n - 1].verdict == "strict";
      if (strict != high_power) o.fail("Z/" + std::to_string(p * p) + " degree " + std::to_string(n));
    }
  }
  if (o.ok) o.detail = "suite pairings; Z/4 and Z/9 strict exactly at p^2, p^3";
  return o;
}

Outcome corollary_exponent() {
  Outcome o;
  FinitePGroup G = build_group(heisenberg_zp(3, 3));
  const int N = 6;
  VerificationReport r = corollary_exponent_p(heisenberg_presentation(), G, 3, N, "extraspecial 27");
  if (!r.passed) o.fail(r.notes.empty() ? "dims differ" : r.notes.front());
  ZassenhausData Z = zassenhaus_structure(G, 3, N);
  if (!pmap_table_zero(Z.algebra)) o.fail("oracle p-map not zero");
  std::vector<std::size_t> expect{2, 1, 0, 0, 0, 0};
  if (Z.d != expect) o.fail("oracle dims differ from (2,1,0,...)");
  if (o.ok) o.detail = "dims (2,1,0,0,0,0), zero p-map";
  return o;
}

Outcome hall() {
  Outcome o;
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    auto res = hall_prop_check(G, g.p, 100, 11);
    if (!res.passed()) o.fail(g.name + ": " + res.witness->statement);
  }
  FinitePGroup H = build_group(heisenberg_zp(3, 9));
  Subgroup trivial = trivial_subgroup(H);
  auto control = hall_prop_check(H, 3, 100, 11, [&](int, int) { return trivial; });
  if (control.passed()) o.fail("negative control unexpectedly passed");
  if (o.ok) o.detail = "100 trials per group; control failed with '" + control.witness->statement + "'";
  return o;
}

Outcome rho_orders() {
  Outcome o;
  for (auto& g : suite_groups()) {
    FinitePGroup G = build_group(g.spec);
    int len = dimension_series_length(G, g.p);
    for (int n = 1; n <= len; ++n) {
      auto [a, b] = rho_image_order(G, g.p, n);
      if (a != b) o.fail(g.name + " n=" + std::to_string(n));
    }
  }
  if (o.ok) o.detail = "all suite groups, all n";
  return o;
}

Outcome cross_computation() {
  Outcome o;
  for (int s : {3, 4}) {
    auto got = free_ranks(quotient_z(pure_braid_presentation(s), 6));
    for (int n = 1; n <= 6; ++n) {
      long long want = 0;
      for (int k = 1; k < s; ++k) want += static_cast<long long>(witt_rank(k, n));
      if (got[n - 1] != want) o.fail("pure braid " + std::to_string(s) + " degree " + std::to_string(n));
    }
  }
  auto surface = free_ranks(quotient_z(surface_presentation(2).presentation, 8));
  if (surface != euler_transform_inverse(reciprocal({1, -4, 1}, 8), 8)) o.fail("genus 2 surface: " + join(surface));
  std::vector<std::string> v{"a", "b", "c", "d"};
  auto raag = free_ranks(quotient_z(raag_presentation(v, {{"a", "b"}, {"b", "c"}, {"c", "d"}}), 5));
  if (raag != euler_transform_inverse(reciprocal({1, -4, 3}, 5), 5)) o.fail("path RAAG: " + join(raag));
  if (o.ok) o.detail = "P3, P4 to degree 6; genus 2 " + join(surface) + "; path P4 RAAG";
  return o;
}

Outcome gamma_free() {
  Outcome o;
  const int N = 6;
  auto check = [&](const std::string& name, const LiePresentation& pres) {
    if (!quotient_z(pres, N).is_gamma_free_up_to_N) o.fail(name);
  };
  for (int k : {1, 2, 3}) check("free " + std::to_string(k), free_presentation(k));
  for (int g : {1, 2, 3}) check("surface " + std::to_string(g), surface_presentation(g).presentation);
  check("RAAG path", raag_presentation({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}));
  check("RAAG square", raag_presentation({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}));
  for (int s : {2, 3, 4}) check("pure braid " + std::to_string(s), pure_braid_presentation(s));
  check("Heisenberg", heisenberg_presentation());
  if (o.ok) o.detail = "free, surface g<=3, two RAAGs, pure braid s<=4, Heisenberg";
  return o;
}

Outcome restricted_axioms() {
  Outcome o;
  const int N = 6;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    GradedLieAlgebraFp L = quotient_fp(free_presentation(2), p, N);
    RestrictedGLA R = restrictify(L, N);
    AssociativeOracle U(L, R);
    PrimeField F(p);
    std::mt19937_64 rng(100 + p);
    int pairs = 0;
    while (pairs < 100) {
      int i = static_cast<int>(rng() % N) + 1;
      int j = static_cast<int>(rng() % N) + 1;
      if (i + j > N) continue;
      ++pairs;
      FpVec x = random_vec(rng, p, R.dim(i)), y = random_vec(rng, p, R.dim(j));
      if (U.image(R.bracket(x, i, y, j), i + j) != U.commutator(U.image(x, i), U.image(y, j)))
        o.fail("bracket disagrees with commutator, p=" + std::to_string(p));
      if (static_cast<int>(p) * i <= N) {
        FpVec xp = R.p_map(x, i);
        if (U.image(xp, p * i) != U.power(U.image(x, i))) o.fail("p-map disagrees with p-th power");
        auto c = static_cast<std::uint32_t>(rng() % p);
        if (R.p_map(fpvec::scale(F, c, x), i) != fpvec::scale(F, F.pow(c, p), xp)) o.fail("rL1");
        FpVec x2 = random_vec(rng, p, R.dim(i));
        FpVec lhs = R.p_map(fpvec::add(F, x, x2), i);
        FpVec rhs = fpvec::add(F, xp, R.p_map(x2, i));
        auto s = R.jacobson_all(x, x2, i);  // coefficient of t^(k-1) is k * s_k
        for (std::uint32_t k = 1; k < p; ++k) rhs = fpvec::add(F, rhs, s[k - 1], F.inv(k));
        if (lhs != rhs) o.fail("rL2");
        if (static_cast<int>(p) * i + j <= N &&
            R.bracket(y, j, xp, p * i) != fpvec::scale(F, p - 1, R.ad_power(x, i, y, j, p)))
          o.fail("rL3");
      }
    }
  }
  if (o.ok) o.detail = "p in {2,3,5}, degrees <= 6, 100 pairs each";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Witt ranks match Lyndon counts", witt_lyndon},
      {"PBW identity and inversion round trip", pbw_identity},
      {"dimension subgroups: product formula equals augmentation powers", jennings_equality},
      {"Jennings series matches omega grading and sums to |G|", jennings_series_check},
      {"Heisenberg ladder certificate", theorem_b},
      {"oracle bounded by prediction; strict kernel for Z/p^2", theorem_a},
      {"exponent-p group has zero p-map and matches zero-p-map quotient", corollary_exponent},
      {"Hall congruences and negative control", hall},
      {"rho image orders agree", rho_orders},
      {"pure braid, surface and RAAG cross-checks", cross_computation},
      {"gamma-freeness certificates", gamma_free},
      {"restricted axioms against the associative oracle", restricted_axioms},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu: %s  %s (%s) [%.2fs]\n", k + 1, o.ok ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
