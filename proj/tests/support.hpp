#pragma once

// Fixtures and independent oracles shared by the unit tests and the
// acceptance binary.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grlie/catalog/catalog.hpp"
#include "grlie/freelie/freelie.hpp"
#include "grlie/hilbert/hilbert.hpp"
#include "grlie/liepres/liepres.hpp"
#include "grlie/pgroup/pgroup.hpp"
#include "grlie/restrictify/restricted.hpp"

namespace grlie::testing {

struct SuiteGroup {
  std::string name;
  GroupSpec spec;
  std::uint32_t p;
  LiePresentation presentation;  // a presentation whose group maps onto this one
};

inline LiePresentation abelian_presentation(int k) {
  std::vector<std::string> names, rels;
  for (int i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) rels.push_back("[" + names[i] + "," + names[j] + "]");
  return LiePresentation::parse(Alphabet(names, std::vector<int>(k, 1)), rels);
}

// Q8 is paired with <a, b | [a,b]^2>, whose Lie presentation has 2-torsion
// in degree 2; the other pairings are gamma-free.
inline std::vector<SuiteGroup> suite_groups() {
  auto squared_commutator =
      one_relator_presentation(Alphabet({"a", "b"}, {1, 1}), "a^-1 b^-1 a b a^-1 b^-1 a b").presentation;
  return {
      {"Z/4", abelian_spec({4}), 2, free_presentation(1)},
      {"Z/9", abelian_spec({9}), 3, free_presentation(1)},
      {"(Z/2)^3", abelian_spec({2, 2, 2}), 2, abelian_presentation(3)},
      {"Q8", quaternion_spec(), 2, squared_commutator},
      {"extraspecial 27", heisenberg_zp(3, 3), 3, heisenberg_presentation()},
      {"Heisenberg Z/9", heisenberg_zp(3, 9), 3, heisenberg_presentation()},
      {"Heisenberg Z/4", heisenberg_zp(2, 4), 2, heisenberg_presentation()},
  };
}

/// Dimensions d_n with prod_n (1 - t^n)^(-d_n) = h, via Newton power sums and
/// Mobius inversion. Independent of the library's PBW inversion.
inline std::vector<long long> euler_transform_inverse(const std::vector<long long>& h, int N) {
  std::vector<long long> a(N + 1, 0), d(N + 1, 0);
  auto coeff = [&](int i) { return i < static_cast<int>(h.size()) ? h[i] : 0LL; };
  for (int m = 1; m <= N; ++m) {
    long long s = m * coeff(m);
    for (int k = 1; k < m; ++k) s -= a[k] * coeff(m - k);
    a[m] = s;
  }
  for (int m = 1; m <= N; ++m) {
    long long s = 0;
    for (int n = 1; n <= m; ++n)
      if (m % n == 0) s += mobius(m / n) * a[n];
    d[m] = s / m;
  }
  return std::vector<long long>(d.begin() + 1, d.end());
}

/// Coefficients of 1/q(t) to order N, by long division.
inline std::vector<long long> reciprocal(const std::vector<long long>& q, int N) {
  std::vector<long long> h(N + 1, 0);
  h[0] = 1;
  for (int m = 1; m <= N; ++m) {
    long long s = 0;
    for (int k = 1; k <= m && k < static_cast<int>(q.size()); ++k) s -= q[k] * h[m - k];
    h[m] = s;
  }
  return h;
}

inline std::vector<long long> to_ll(const DimensionTable& t) {
  std::vector<long long> out;
  for (auto& x : t.d) out.push_back(static_cast<long long>(x));
  return out;
}

inline std::vector<long long> free_ranks(const GradedAbelianInvariants& g) {
  std::vector<long long> out;
  for (auto& d : g.degrees) out.push_back(static_cast<long long>(d.free_rank));
  return out;
}

inline FpVec random_vec(std::mt19937_64& rng, std::uint32_t p, std::size_t dim) {
  FpVec v;
  for (std::size_t k = dim; k-- > 0;) {
    auto c = static_cast<std::uint32_t>(rng() % p);
    if (c) v.emplace_back(static_cast<std::uint32_t>(k), c);
  }
  return v;
}

/// Embedding of the restrictification of a free Lie algebra into the free
/// associative algebra mod p: the label b^[p^j] goes to b^(p^j).
class AssociativeOracle {
 public:
  AssociativeOracle(const GradedLieAlgebraFp& L, const RestrictedGLA& R) : p_(R.p()), images_(R.max_degree() + 1) {
    const auto* data = L.presentation();
    for (int n = 1; n <= R.max_degree(); ++n)
      for (auto& lab : R.labels(n)) {
        const Word& w = data->basis_words[lab.base_degree][lab.base_index];
        AssocPoly x = expand_assoc(data->alphabet, standard_bracketing(data->alphabet, w)).reduced_mod(p_);
        for (int j = 0; j < lab.power; ++j) x = power(x);
        images_[n].push_back(x);
      }
  }

  AssocPoly image(const FpVec& v, int n) const {
    AssocPoly out;
    for (auto& [k, c] : v) out.add_scaled(images_[n][k], c);
    return out.reduced_mod(p_);
  }
  AssocPoly power(const AssocPoly& x) const {
    AssocPoly y = x;
    for (std::uint32_t i = 1; i < p_; ++i) y = (y * x).reduced_mod(p_);
    return y;
  }
  AssocPoly commutator(const AssocPoly& x, const AssocPoly& y) const {
    return AssocPoly::commutator(x, y).reduced_mod(p_);
  }

 private:
  std::uint32_t p_;
  std::vector<std::vector<AssocPoly>> images_;
};

}  // namespace grlie::testing
