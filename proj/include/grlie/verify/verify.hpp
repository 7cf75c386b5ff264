#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grlie/catalog/catalog.hpp"
#include "grlie/error.hpp"
#include "grlie/exactalg/matrix_fp.hpp"
#include "grlie/liepres/liepres.hpp"
#include "grlie/pgroup/pgroup.hpp"
#include "grlie/restrictify/restricted.hpp"

namespace grlie {

struct DegreeRow {
  int n = 0;
  long predicted = 0;
  long oracle = 0;
  long kernel = 0;
  std::string verdict;  // equal | strict | out-of-faithful-range | violation
};

/// Outcome of the restricted homomorphism from the prediction to the oracle.
struct HomomorphismCheck {
  bool performed = false;
  bool well_defined = true;  // every label lands in the expected D_n
  bool brackets = true;
  bool pmap = true;
  std::vector<int> surjective_degrees;
  std::string failure;
};

struct VerificationReport {
  std::string kind;
  std::string description;
  std::uint32_t p = 0;
  int N = 0;
  std::vector<DegreeRow> rows;
  std::vector<int> faithful_range;
  HomomorphismCheck homomorphism;
  bool passed = true;
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// The map from a restrictification (or its quotients) to gr^Z

namespace detail {

/// Group element of a Lyndon word: standard bracketing as iterated commutators.
inline std::uint32_t evaluate_word(const FinitePGroup& G, const Word& w, const std::vector<std::uint32_t>& images) {
  if (w.length() == 1) return images.at(w[0]);
  auto [u, v] = standard_factorization(w);
  return G.comm(evaluate_word(G, u, images), evaluate_word(G, v, images));
}

inline FpVec combine_rows(const PrimeField& F, const std::vector<FpVec>& rows, const FpVec& v) {
  FpVec out;
  for (auto& [i, c] : v) out = sparse_axpy(F, out, c, rows.at(i));
  return out;
}

inline std::size_t fp_rank_of(std::uint32_t p, const std::vector<FpVec>& rows, std::size_t cols) {
  FpRowSpace space(p, cols);
  for (auto& r : rows) {
    std::vector<std::uint32_t> dense(cols, 0);
    for (auto& [i, c] : r) dense[i] = c;
    space.insert(dense);
  }
  return space.rank();
}

}  // namespace detail

/// Images of basis labels of `A` (labels refer to basis words of L) in gr^Z:
/// label b^[p^j] goes to the class of (commutator of b)^(p^j).
/// Checks brackets and the p-map against the oracle tables, and records
/// the degrees where the map is onto.
inline HomomorphismCheck restricted_homomorphism_check(const RestrictedGLA& A, const GradedLieAlgebraFp& L,
                                                       const FinitePGroup& G, const ZassenhausData& Z,
                                                       const std::vector<std::uint32_t>& images, int N) {
  HomomorphismCheck h;
  h.performed = true;
  const auto* pres = L.presentation();
  if (!pres) throw InputError("homomorphism check needs a presented Lie algebra");
  for (int w : pres->alphabet.weights)
    if (w != 1) throw InputError("homomorphism check needs weight-1 generators");
  if (images.size() != static_cast<std::size_t>(pres->alphabet.size()))
    throw InputError("generator images do not match the presentation");
  const std::uint32_t p = A.p();
  const PrimeField& F = A.field();
  std::vector<std::vector<FpVec>> theta(N + 1);
  for (int n = 1; n <= N; ++n)
    for (const auto& lab : A.labels(n)) {
      std::uint32_t x = detail::evaluate_word(G, pres->basis_words[lab.base_degree][lab.base_index], images);
      for (int j = 0; j < lab.power; ++j) x = G.pow(x, p);
      if (Z.coset_index[n][x] < 0) {
        h.well_defined = false;
        h.failure = "image of " + lab.text + " is not in D_" + std::to_string(n);
        return h;
      }
      theta[n].push_back(Z.class_of(x, n));
    }
  for (int i = 1; i <= N && h.brackets; ++i)
    for (int j = i; i + j <= N && h.brackets; ++j)
      for (std::size_t a = 0; a < A.dim(i) && h.brackets; ++a)
        for (std::size_t b = 0; b < A.dim(j); ++b) {
          FpVec lhs = detail::combine_rows(F, theta[i + j], A.bracket_basis(i, a, j, b));
          FpVec rhs = Z.algebra.bracket(theta[i][a], i, theta[j][b], j);
          if (lhs != rhs) {
            h.brackets = false;
            h.failure = "bracket of " + A.labels(i)[a].text + " and " + A.labels(j)[b].text + " is not preserved";
            break;
          }
        }
  for (int n = 1; static_cast<long>(n) * p <= N && h.pmap; ++n)
    for (std::size_t a = 0; a < A.dim(n); ++a) {
      const int m = n * static_cast<int>(p);
      FpVec lhs = detail::combine_rows(F, theta[m], A.pmap_basis(n, a));
      FpVec rhs = Z.algebra.p_map(theta[n][a], n);
      if (lhs != rhs) {
        h.pmap = false;
        h.failure = "p-map of " + A.labels(n)[a].text + " is not preserved";
        break;
      }
    }
  for (int n = 1; n <= N; ++n)
    if (detail::fp_rank_of(p, theta[n], Z.d[n - 1]) == Z.d[n - 1]) h.surjective_degrees.push_back(n);
  return h;
}

inline bool homomorphism_ok(const HomomorphismCheck& h, int N) {
  return h.performed && h.well_defined && h.brackets && h.pmap &&
         static_cast<int>(h.surjective_degrees.size()) == N;
}

/// Default pairing: presentation generator k maps to the k-th group generator.
inline std::vector<std::uint32_t> default_images(const LiePresentation& pres, const FinitePGroup& G) {
  if (static_cast<std::size_t>(pres.alphabet.size()) != G.generators().size())
    throw InputError("presentation and group have different numbers of generators");
  return G.generators();
}

// ---------------------------------------------------------------------------
// Theorem checks

/// Oracle d_n <= predicted d_n in every degree, with the kernel dimensions.
inline VerificationReport theorem_a_check(const LiePresentation& pres, const FinitePGroup& G, std::uint32_t p, int N,
                                          std::string description = {},
                                          std::optional<std::vector<std::uint32_t>> images = std::nullopt) {
  VerificationReport r;
  r.kind = "theorem-a";
  r.description = std::move(description);
  r.p = p;
  r.N = N;
  GradedLieAlgebraFp L = quotient_fp(pres, p, N);
  RestrictedGLA R = restrictify(L, N);
  ZassenhausData Z = zassenhaus_structure(G, p, N);
  for (int n = 1; n <= N; ++n) {
    DegreeRow row{n, static_cast<long>(R.dim(n)), static_cast<long>(Z.d[n - 1]), 0, ""};
    row.kernel = row.predicted - row.oracle;
    row.verdict = row.kernel < 0 ? "violation" : row.kernel == 0 ? "equal" : "strict";
    if (row.kernel < 0) r.passed = false;
    r.rows.push_back(row);
    r.faithful_range.push_back(n);
  }
  r.homomorphism = restricted_homomorphism_check(R, L, G, Z, images ? *images : default_images(pres, G), N);
  if (!r.homomorphism.well_defined || !r.homomorphism.brackets || !r.homomorphism.pmap ||
      static_cast<int>(r.homomorphism.surjective_degrees.size()) != N) {
    r.passed = false;
    r.notes.push_back("restricted homomorphism check failed: " + r.homomorphism.failure);
  }
  return r;
}

/// Predicted = oracle on degrees where the last two groups of the ladder agree.
inline VerificationReport theorem_b_certify(const LiePresentation& pres, const std::vector<GroupSpec>& ladder,
                                            std::uint32_t p, int N, std::string description = {}) {
  if (ladder.size() < 2) throw InputError("theorem B needs at least two quotients in the modulus ladder");
  VerificationReport r;
  r.kind = "theorem-b";
  r.description = std::move(description);
  r.p = p;
  r.N = N;
  GradedLieAlgebraFp L = quotient_fp(pres, p, N);
  RestrictedGLA R = restrictify(L, N);
  std::vector<std::size_t> prev;
  std::optional<FinitePGroup> top;
  std::optional<ZassenhausData> topZ;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    FinitePGroup G = build_group(ladder[k], ladder_cap());
    ZassenhausData Z = zassenhaus_structure(G, p, N);
    if (k + 1 < ladder.size()) {
      prev = Z.d;
    } else {
      topZ = std::move(Z);
      top.emplace(std::move(G));
    }
  }
  for (int n = 1; n <= N; ++n) {
    DegreeRow row{n, static_cast<long>(R.dim(n)), static_cast<long>(topZ->d[n - 1]), 0, ""};
    row.kernel = row.predicted - row.oracle;
    if (prev[n - 1] != topZ->d[n - 1]) {
      row.verdict = "out-of-faithful-range";
    } else {
      r.faithful_range.push_back(n);
      row.verdict = row.kernel == 0 ? "equal" : row.kernel > 0 ? "strict" : "violation";
      if (row.kernel != 0) r.passed = false;
    }
    r.rows.push_back(row);
  }
  if (r.faithful_range.empty()) throw InputError("no stabilized degrees: moduli too small");
  r.homomorphism = restricted_homomorphism_check(R, L, *top, *topZ, default_images(pres, *top), N);
  const auto& h = r.homomorphism;
  bool onto = true;
  for (int n : r.faithful_range)
    onto = onto && std::find(h.surjective_degrees.begin(), h.surjective_degrees.end(), n) != h.surjective_degrees.end();
  if (!h.well_defined || !h.brackets || !h.pmap || !onto) {
    r.passed = false;
    r.notes.push_back("restricted homomorphism check failed: " + h.failure);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hall congruences

using DTable = std::function<Subgroup(int n, int k)>;

struct HallWitness {
  std::string statement;
  int i = 0, j = 0;
  std::uint32_t x = 0, y = 0;
};

struct HallResult {
  int trials = 0;
  int failures = 0;
  std::optional<HallWitness> witness;
  bool passed() const { return failures == 0; }
};

/// Random tests of (xy)^(p^j) = x^(p^j) y^(p^j) mod D_{ip^j,i+1} for
/// x, y in gamma_i, and [x^(p^j), y] in D_{ip^j,i+1} for y in G.
/// `table` overrides the refined dimension subgroups (negative controls).
inline HallResult hall_prop_check(const FinitePGroup& G, std::uint32_t p, int trials, std::uint64_t seed = 1,
                                  DTable table = {}) {
  JenningsSeries J(G, p);
  if (!table) table = [&J](int n, int k) { return J.D(n, k); };
  int cls = 1;
  while (J.gamma(cls + 1).size() > 1) ++cls;
  std::mt19937_64 rng(seed);
  HallResult res;
  const Subgroup whole = whole_group(G);
  for (int t = 0; t < trials; ++t) {
    int i = static_cast<int>(rng() % static_cast<std::uint64_t>(cls)) + 1;
    int j = static_cast<int>(rng() % 3);
    const Subgroup& gi = J.gamma(i);
    std::uint32_t x = gi.elements[rng() % gi.size()];
    std::uint32_t y = gi.elements[rng() % gi.size()];
    std::uint32_t g = whole.elements[rng() % whole.size()];
    std::uint64_t q = 1;
    for (int s = 0; s < j; ++s) q *= p;
    long n = static_cast<long>(i) * static_cast<long>(q);
    Subgroup D = table(static_cast<int>(n), i + 1);
    ++res.trials;
    std::uint32_t lhs = G.pow(G.mul(x, y), q);
    std::uint32_t rhs = G.mul(G.pow(x, q), G.pow(y, q));
    if (!D.contains(G.mul(G.inv(rhs), lhs))) {
      ++res.failures;
      if (!res.witness) res.witness = HallWitness{"power of a product", i, j, x, y};
      continue;
    }
    if (!D.contains(G.comm(G.pow(x, q), g))) {
      ++res.failures;
      if (!res.witness) res.witness = HallWitness{"commutator with a power", i, j, x, g};
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Corollaries

inline bool has_exponent_p(const FinitePGroup& G, std::uint32_t p) {
  for (std::uint32_t x = 0; x < G.size(); ++x)
    if (G.pow(x, p) != G.identity()) return false;
  return true;
}

inline bool pmap_table_zero(const RestrictedGLA& A) {
  for (int n = 1; static_cast<long>(n) * A.p() <= A.max_degree(); ++n)
    for (std::size_t a = 0; a < A.dim(n); ++a)
      if (!A.pmap_basis(n, a).empty()) return false;
  return true;
}

inline bool brackets_zero(const RestrictedGLA& A) {
  for (int i = 1; i <= A.max_degree(); ++i)
    for (int j = 1; i + j <= A.max_degree(); ++j)
      for (std::size_t a = 0; a < A.dim(i); ++a)
        for (std::size_t b = 0; b < A.dim(j); ++b)
          if (!A.bracket_basis(i, a, j, b).empty()) return false;
  return true;
}

/// Exponent-p group: zero p-map on gr^Z and gr^Z isomorphic to the zero-p-map
/// quotient of the prediction.
inline VerificationReport corollary_exponent_p(const LiePresentation& pres, const FinitePGroup& G, std::uint32_t p,
                                               int N, std::string description = {}) {
  if (!has_exponent_p(G, p)) throw InputError("precondition: group does not have exponent p");
  VerificationReport r;
  r.kind = "corollary-exponent-p";
  r.description = std::move(description);
  r.p = p;
  r.N = N;
  GradedLieAlgebraFp L = quotient_fp(pres, p, N);
  RestrictedGLA R = restrictify(L, N);
  RestrictedGLA Q = restricted_quotient_mode(R, QuotientMode::ZeroPMap);
  ZassenhausData Z = zassenhaus_structure(G, p, N);
  if (!pmap_table_zero(Z.algebra)) {
    r.passed = false;
    r.notes.push_back("oracle p-map is not identically zero");
  }
  for (int n = 1; n <= N; ++n) {
    DegreeRow row{n, static_cast<long>(Q.dim(n)), static_cast<long>(Z.d[n - 1]), 0, ""};
    row.kernel = row.predicted - row.oracle;
    row.verdict = row.kernel == 0 ? "equal" : row.kernel > 0 ? "strict" : "violation";
    if (row.kernel != 0) r.passed = false;
    r.rows.push_back(row);
    r.faithful_range.push_back(n);
  }
  r.homomorphism = restricted_homomorphism_check(Q, L, G, Z, default_images(pres, G), N);
  if (!homomorphism_ok(r.homomorphism, N)) {
    r.passed = false;
    r.notes.push_back("zero-p-map quotient does not map isomorphically: " + r.homomorphism.failure);
  }
  return r;
}

/// Abelianized restrictification: brackets vanish; dims reported per degree.
inline VerificationReport corollary_abelian_restricted(const RestrictedGLA& R, std::string description = {}) {
  VerificationReport r;
  r.kind = "corollary-abelian";
  r.description = std::move(description);
  r.p = R.p();
  r.N = R.max_degree();
  RestrictedGLA A = restricted_quotient_mode(R, QuotientMode::Abelianize);
  for (int n = 1; n <= R.max_degree(); ++n) {
    DegreeRow row{n, static_cast<long>(A.dim(n)), static_cast<long>(A.dim(n)), 0, "equal"};
    r.rows.push_back(row);
  }
  if (!brackets_zero(A)) {
    r.passed = false;
    r.notes.push_back("quotient is not abelian");
  }
  return r;
}

/// Random homogeneous pairs with ad(x)^(p-1)(y) = 0; returns the failure count.
inline int engel_sample(const RestrictedGLA& A, int trials, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  const int p = static_cast<int>(A.p());
  const int N = A.max_degree();
  int failures = 0;
  auto random_vec = [&](int n) {
    FpVec v;
    for (std::size_t k = A.dim(n); k-- > 0;) {
      auto c = static_cast<std::uint32_t>(rng() % A.p());
      if (c) v.emplace_back(static_cast<std::uint32_t>(k), c);
    }
    return v;
  };
  for (int t = 0; t < trials; ++t) {
    int i = static_cast<int>(rng() % static_cast<std::uint64_t>(N)) + 1;
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(N)) + 1;
    if (static_cast<long>(i) * (p - 1) + j > N) continue;  // beyond the truncation: vacuous
    if (!A.ad_power(random_vec(i), i, random_vec(j), j, p - 1).empty()) ++failures;
  }
  return failures;
}

}  // namespace grlie
