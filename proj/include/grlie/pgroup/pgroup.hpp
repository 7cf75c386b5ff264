#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grlie/catalog/catalog.hpp"
#include "grlie/error.hpp"
#include "grlie/exactalg/matrix_fp.hpp"
#include "grlie/exactalg/rings.hpp"
#include "grlie/restrictify/restricted.hpp"

namespace grlie {

/// Finite p-group on element indices 0..|G|-1. Small groups keep a full
/// multiplication table; large matrix groups multiply matrices on demand.
class FinitePGroup {
 public:
  using Elem = std::uint32_t;

  /// Table size limit: above this, matrix groups switch to on-demand products.
  static constexpr std::size_t kTableLimit = 4096;

  static FinitePGroup from_table(std::vector<std::uint16_t> table, std::size_t size, Elem identity,
                                 std::vector<Elem> generators) {
    FinitePGroup G;
    G.n_ = size;
    G.table_ = std::move(table);
    G.identity_ = identity;
    G.gens_ = std::move(generators);
    G.finish();
    return G;
  }

  static FinitePGroup from_matrices(int dim, std::int64_t modulus, std::vector<std::vector<std::int64_t>> elems,
                                    Elem identity, std::vector<Elem> generators) {
    FinitePGroup G;
    G.n_ = elems.size();
    G.dim_ = dim;
    G.modulus_ = modulus;
    G.identity_ = identity;
    G.gens_ = std::move(generators);
    for (Elem i = 0; i < G.n_; ++i) G.index_.emplace(key(elems[i]), i);
    G.mats_ = std::move(elems);
    G.finish();
    return G;
  }

  std::size_t size() const { return n_; }
  /// Prime dividing |G|; 0 for the trivial group.
  std::uint32_t p() const { return p_; }
  int log_order() const { return log_; }
  Elem identity() const { return identity_; }
  const std::vector<Elem>& generators() const { return gens_; }
  bool has_table() const { return !table_.empty() || n_ == 1; }

  Elem mul(Elem x, Elem y) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(x) * n_ + y];
    if (n_ == 1) return 0;
    return index_.at(key(matmul(mats_[x], mats_[y])));
  }
  Elem inv(Elem x) const { return inv_[x]; }
  Elem pow(Elem x, std::uint64_t e) const {
    Elem r = identity_;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  /// [x, y] = x^-1 y^-1 x y
  Elem comm(Elem x, Elem y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  Elem conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }

 private:
  FinitePGroup() = default;

  static std::string key(const std::vector<std::int64_t>& m) {
    return std::string(reinterpret_cast<const char*>(m.data()), m.size() * sizeof(std::int64_t));
  }
  std::vector<std::int64_t> matmul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    const int d = dim_;
    std::vector<std::int64_t> c(static_cast<std::size_t>(d * d), 0);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        std::int64_t aik = a[i * d + k];
        if (!aik) continue;
        for (int j = 0; j < d; ++j) c[i * d + j] = (c[i * d + j] + aik * b[k * d + j]) % modulus_;
      }
    return c;
  }

  void finish() {
    std::size_t m = n_;
    for (std::uint32_t q = 2; q <= m && m > 1; ++q)
      if (m % q == 0) {
        p_ = q;
        break;
      }
    while (m > 1) {
      if (m % p_) throw InputError("group order " + std::to_string(n_) + " is not a prime power");
      m /= p_;
      ++log_;
    }
    inv_.resize(n_);
    for (Elem x = 0; x < n_; ++x) {
      inv_[x] = pow(x, n_ - 1);
      if (mul(x, inv_[x]) != identity_) throw InputError("table is not a group: element without inverse");
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint16_t> table_;
  int dim_ = 0;
  std::int64_t modulus_ = 0;
  std::vector<std::vector<std::int64_t>> mats_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<Elem> inv_;
  Elem identity_ = 0;
  std::vector<Elem> gens_;
  std::uint32_t p_ = 0;
  int log_ = 0;
};

/// Element cap for enumeration: GRLIE_BUDGET if set, else 4096 for p = 2 and
/// 6561 otherwise.
inline std::size_t element_cap(std::uint32_t p) {
  if (const char* env = std::getenv("GRLIE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == 0 && v > 0) return static_cast<std::size_t>(v);
  }
  return p == 2 ? 4096 : 6561;
}

/// Cap for the modulus ladders of Theorem B (GRLIE_BUDGET still wins);
/// UT3(Z/27) has 3^9 elements.
inline std::size_t ladder_cap() {
  if (std::getenv("GRLIE_BUDGET")) return element_cap(0);
  return 19683;
}

namespace detail {

inline std::uint32_t smallest_prime_factor(std::int64_t m) {
  for (std::int64_t q = 2; q * q <= m; ++q)
    if (m % q == 0) return static_cast<std::uint32_t>(q);
  return static_cast<std::uint32_t>(m);
}

/// Builds the table from right multiplication by generators along a BFS tree:
/// x * y = (x * parent(y)) * gen(y).
inline std::vector<std::uint16_t> table_from_right_action(const std::vector<std::vector<std::uint32_t>>& right,
                                                          std::uint32_t identity,
                                                          const std::vector<std::uint32_t>& parent,
                                                          const std::vector<std::uint32_t>& via,
                                                          const std::vector<std::uint32_t>& order) {
  const std::size_t n = right.size();
  std::vector<std::uint16_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    std::uint16_t* row = &table[x * n];
    row[identity] = static_cast<std::uint16_t>(x);
    for (std::uint32_t y : order) {
      if (y == identity) continue;
      row[y] = static_cast<std::uint16_t>(right[row[parent[y]]][via[y]]);
    }
  }
  return table;
}

}  // namespace detail

inline FinitePGroup build_matrix_group(const GroupSpec& spec, std::optional<std::size_t> cap_override = std::nullopt) {
  const int d = spec.dim;
  const std::int64_t m = spec.modulus;
  if (d < 1 || m < 2) throw InputError("finite_matrix needs dim >= 1 and modulus >= 2");
  if (spec.matrices.empty()) throw InputError("finite_matrix needs at least one generator");
  for (auto& g : spec.matrices) {
    if (static_cast<int>(g.size()) != d) throw InputError("generator matrix has wrong size");
    for (auto& row : g)
      if (static_cast<int>(row.size()) != d) throw InputError("generator matrix has wrong size");
  }
  const std::size_t cap = cap_override ? *cap_override : element_cap(detail::smallest_prime_factor(m));
  using Flat = std::vector<std::int64_t>;
  auto flatten = [&](const IntMatrix& a) {
    Flat f;
    for (auto& row : a)
      for (auto x : row) f.push_back(((x % m) + m) % m);
    return f;
  };
  std::vector<Flat> gens;
  for (auto& g : spec.matrices) gens.push_back(flatten(g));
  auto mul = [&](const Flat& a, const Flat& b) {
    Flat c(static_cast<std::size_t>(d * d), 0);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        std::int64_t aik = a[i * d + k];
        if (!aik) continue;
        for (int j = 0; j < d; ++j) c[i * d + j] = (c[i * d + j] + aik * b[k * d + j]) % m;
      }
    return c;
  };
  std::map<Flat, std::uint32_t> index;
  std::vector<Flat> elems;
  Flat id(static_cast<std::size_t>(d * d), 0);
  for (int i = 0; i < d; ++i) id[i * d + i] = 1;
  index[id] = 0;
  elems.push_back(id);
  std::vector<std::uint32_t> parent{0}, via{0}, order{0};
  std::vector<std::vector<std::uint32_t>> right;
  for (std::size_t q = 0; q < elems.size(); ++q) {
    std::vector<std::uint32_t> r;
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      Flat y = mul(elems[q], gens[g]);
      auto [it, fresh] = index.emplace(y, static_cast<std::uint32_t>(elems.size()));
      if (fresh) {
        if (elems.size() + 1 > cap)
          throw BudgetExceeded("group enumeration exceeded the element cap of " + std::to_string(cap));
        elems.push_back(std::move(y));
        parent.push_back(static_cast<std::uint32_t>(q));
        via.push_back(g);
        order.push_back(it->second);
      }
      r.push_back(it->second);
    }
    right.push_back(std::move(r));
  }
  std::vector<std::uint32_t> gen_idx;
  for (auto& g : gens) gen_idx.push_back(index.at(g));
  if (elems.size() <= FinitePGroup::kTableLimit)
    return FinitePGroup::from_table(detail::table_from_right_action(right, 0, parent, via, order), elems.size(), 0,
                                    gen_idx);
  return FinitePGroup::from_matrices(d, m, std::move(elems), 0, gen_idx);
}

inline FinitePGroup build_cayley_group(const GroupSpec& spec) {
  const std::size_t n = spec.table.size();
  if (n == 0) throw InputError("empty Cayley table");
  if (n > 65535) throw BudgetExceeded("Cayley table too large");
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (spec.table[x].size() != n) throw InputError("Cayley table must be square");
    std::vector<char> seen(n, 0);
    for (std::size_t y = 0; y < n; ++y) {
      std::uint32_t z = spec.table[x][y];
      if (z >= n) throw InputError("Cayley table entry out of range");
      if (seen[z]) throw InputError("table is not a group: row is not a permutation");
      seen[z] = 1;
      t[x * n + y] = static_cast<std::uint16_t>(z);
    }
  }
  std::optional<std::uint32_t> id;
  for (std::uint32_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = t[e * n + x] == x && t[x * n + e] == x;
    if (ok) id = e;
  }
  if (!id) throw InputError("table is not a group: no identity");
  // associativity: exhaustive for small tables, strided sample otherwise
  const std::size_t stride = n <= 64 ? 1 : n / 61 + 1;
  for (std::size_t a = 0; a < n; a += stride)
    for (std::size_t b = 0; b < n; b += stride)
      for (std::size_t c = 0; c < n; c += stride)
        if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]])
          throw InputError("table is not a group: associativity fails");
  std::vector<std::uint32_t> gens = spec.table_generators;
  if (gens.empty())
    for (std::uint32_t x = 0; x < n; ++x)
      if (x != *id) gens.push_back(x);
  for (auto g : gens)
    if (g >= n) throw InputError("generator index out of range");
  FinitePGroup G = FinitePGroup::from_table(std::move(t), n, *id, gens);
  if (n > element_cap(G.p())) throw BudgetExceeded("group exceeds the element cap");
  return G;
}

inline FinitePGroup build_group(const GroupSpec& spec, std::optional<std::size_t> cap = std::nullopt);

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  std::vector<std::uint32_t> elements;  // sorted
  std::vector<char> member;
  std::vector<std::uint32_t> gens;

  std::size_t size() const { return elements.size(); }
  bool contains(std::uint32_t x) const { return member[x] != 0; }
  bool operator==(const Subgroup& o) const { return elements == o.elements; }
};

/// Adds x (and closes) by extending along right multiplication.
inline void extend_subgroup(const FinitePGroup& G, Subgroup& H, std::uint32_t x) {
  if (H.contains(x)) return;
  H.gens.push_back(x);
  std::vector<std::uint32_t> queue;
  std::size_t head = 0;
  // existing elements times the new generator, then new elements times everything
  for (std::uint32_t h : H.elements) {
    std::uint32_t y = G.mul(h, x);
    if (!H.member[y]) {
      H.member[y] = 1;
      queue.push_back(y);
    }
  }
  while (head < queue.size()) {
    std::uint32_t h = queue[head++];
    for (std::uint32_t g : H.gens) {
      std::uint32_t y = G.mul(h, g);
      if (!H.member[y]) {
        H.member[y] = 1;
        queue.push_back(y);
      }
    }
  }
  H.elements.insert(H.elements.end(), queue.begin(), queue.end());
  std::sort(H.elements.begin(), H.elements.end());
}

inline Subgroup trivial_subgroup(const FinitePGroup& G) {
  Subgroup H;
  H.member.assign(G.size(), 0);
  H.member[G.identity()] = 1;
  H.elements = {G.identity()};
  return H;
}

/// Smallest subgroup containing the given elements; keeps a short generating set.
inline Subgroup closure(const FinitePGroup& G, const std::vector<std::uint32_t>& elems) {
  Subgroup H = trivial_subgroup(G);
  for (auto x : elems) extend_subgroup(G, H, x);
  return H;
}

inline Subgroup whole_group(const FinitePGroup& G) { return closure(G, G.generators()); }

inline bool is_normal(const FinitePGroup& G, const Subgroup& H) {
  for (auto h : H.gens)
    for (auto g : G.generators())
      if (!H.contains(G.conj(h, g))) return false;
  return true;
}

inline Subgroup normal_closure(const FinitePGroup& G, const std::vector<std::uint32_t>& elems) {
  Subgroup H = closure(G, elems);
  for (std::size_t k = 0; k < H.gens.size(); ++k)  // gens grows as conjugates are added
    for (auto g : G.generators()) extend_subgroup(G, H, G.conj(H.gens[k], g));
  return H;
}

/// [H, K] for normal subgroups: normal closure of commutators of generators.
inline Subgroup commutator_subgroup(const FinitePGroup& G, const Subgroup& H, const Subgroup& K) {
  if (!is_normal(G, H) || !is_normal(G, K)) throw std::logic_error("commutator of non-normal subgroups");
  std::vector<std::uint32_t> cs;
  for (auto h : H.gens)
    for (auto k : K.gens) cs.push_back(G.comm(h, k));
  return normal_closure(G, cs);
}

/// Subgroup generated by all q-th powers of elements of H.
inline Subgroup power_subgroup(const FinitePGroup& G, const Subgroup& H, std::uint64_t q) {
  std::vector<std::uint32_t> pw;
  for (auto h : H.elements) pw.push_back(G.pow(h, q));
  return closure(G, pw);
}

inline Subgroup product_subgroup(const FinitePGroup& G, const Subgroup& H, const Subgroup& K) {
  Subgroup P = H;
  for (auto k : K.gens) extend_subgroup(G, P, k);
  return P;
}

/// gamma_1 .. gamma_N (index 0 unused).
inline std::vector<Subgroup> lower_central(const FinitePGroup& G, int N) {
  std::vector<Subgroup> g(1);
  g.push_back(whole_group(G));
  for (int i = 2; i <= N; ++i) g.push_back(commutator_subgroup(G, whole_group(G), g[i - 1]));
  return g;
}

// ---------------------------------------------------------------------------
// Dimension subgroups, product form

/// Least j >= 0 with i p^j >= n.
inline int jennings_exponent(int n, int i, std::uint32_t p) {
  int j = 0;
  for (long v = i; v < n; v *= p) ++j;
  return j;
}

/// Power subgroups gamma_i^(p^j) with memoization; D_{n,k} as finite products.
class JenningsSeries {
 public:
  JenningsSeries(const FinitePGroup& G, std::uint32_t p) : G_(G), p_(p) {
    if (G.size() > 1 && G.p() != p) throw InputError("group order is not a power of p");
    gamma_ = lower_central(G, 1);
  }

  const Subgroup& gamma(int i) {
    while (static_cast<int>(gamma_.size()) <= i) {
      const Subgroup& last = gamma_.back();
      gamma_.push_back(last.size() == 1 ? last : commutator_subgroup(G_, whole_group(G_), last));
    }
    return gamma_[i];
  }

  const Subgroup& gamma_power(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
    std::uint64_t q = 1;
    for (int s = 0; s < j; ++s) q *= p_;
    return powers_.emplace(key, power_subgroup(G_, gamma(i), q)).first->second;
  }

  /// prod_{i=k}^{max(n,k)} gamma_i^(p^j(n,i))
  Subgroup D(int n, int k) {
    Subgroup acc = trivial_subgroup(G_);
    for (int i = k; i <= std::max(n, k); ++i) acc = product_subgroup(G_, acc, gamma_power(i, jennings_exponent(n, i, p_)));
    return acc;
  }
  Subgroup D(int n) { return D(n, 1); }

  const FinitePGroup& group() const { return G_; }
  std::uint32_t p() const { return p_; }

 private:
  const FinitePGroup& G_;
  std::uint32_t p_;
  std::vector<Subgroup> gamma_;
  std::map<std::pair<int, int>, Subgroup> powers_;
};

/// D_1..D_N by Jennings' product formula (index 0 unused).
inline std::vector<Subgroup> dimension_series_product(const FinitePGroup& G, std::uint32_t p, int N) {
  JenningsSeries J(G, p);
  std::vector<Subgroup> D(1);
  for (int n = 1; n <= N; ++n) D.push_back(J.D(n));
  return D;
}

// ---------------------------------------------------------------------------
// Dimension subgroups from powers of the augmentation ideal

struct AugmentationData {
  std::vector<std::size_t> omega_dims;  // dim omega^n for n = 0, 1, ... until 0
  std::vector<Subgroup> D;              // D_1..D_N (index 0 unused)
};

enum class AugmentationPath { GeneratorsOnly, AllElements };

inline std::size_t augmentation_limit() { return 4096; }

/// omega^(n+1) is spanned by (s - 1) b over b in a basis of omega^n, with s
/// running over group generators (or all elements on the full path).
inline AugmentationData dimension_series_augmentation(const FinitePGroup& G, std::uint32_t p, int N,
                                                      AugmentationPath path = AugmentationPath::GeneratorsOnly,
                                                      std::size_t limit = augmentation_limit()) {
  if (G.size() > 1 && G.p() != p) throw InputError("group order is not a power of p");
  if (G.size() > limit) throw BudgetExceeded("group algebra exceeds the linear-algebra budget");
  const std::size_t n = G.size();
  const std::uint32_t e = G.identity();
  std::vector<std::uint32_t> mults;
  if (path == AugmentationPath::AllElements) {
    for (std::uint32_t g = 0; g < n; ++g)
      if (g != e) mults.push_back(g);
  } else {
    mults = G.generators();
  }

  AugmentationData out;
  out.omega_dims.push_back(n);
  FpRowSpace current(p, n);
  for (std::uint32_t g = 0; g < n; ++g) {
    if (g == e) continue;
    std::vector<std::uint32_t> v(n, 0);
    v[g] = 1;
    v[e] = p - 1;
    current.insert(v);
  }
  std::vector<FpRowSpace> powers;
  powers.push_back(current);
  out.omega_dims.push_back(current.rank());
  while (current.rank() > 0) {
    FpRowSpace next(p, n);
    std::vector<std::uint32_t> w(n);
    for (const auto& b : current.echelon_rows())
      for (std::uint32_t s : mults) {
        // (s - 1) b: coordinate s*y gets b_y, minus b
        for (std::size_t x = 0; x < n; ++x) w[x] = b[x] ? p - b[x] : 0;
        for (std::uint32_t y = 0; y < n; ++y)
          if (b[y]) {
            std::uint32_t sy = G.mul(s, y);
            w[sy] = (w[sy] + b[y]) % p;
          }
        next.insert(w);
      }
    out.omega_dims.push_back(next.rank());
    current = std::move(next);
    if (static_cast<int>(powers.size()) < N) powers.push_back(current);
  }

  out.D.resize(1);
  Subgroup prev = whole_group(G);
  for (int k = 1; k <= N; ++k) {
    std::vector<std::uint32_t> members;
    const FpRowSpace* space = k - 1 < static_cast<int>(powers.size()) ? &powers[k - 1] : nullptr;
    for (auto g : prev.elements) {
      if (g == e) continue;
      bool in = false;
      if (space) {
        std::vector<std::uint32_t> v(n, 0);
        v[g] = 1;
        v[e] = p - 1;
        in = space->contains(v);
      }
      if (in) members.push_back(g);
    }
    Subgroup Dk = closure(G, members);
    if (Dk.size() != members.size() + 1) throw VerificationFailure("augmentation D_n is not a subgroup");
    out.D.push_back(Dk);
    prev = std::move(Dk);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zassenhaus restricted Lie algebra

enum class RepresentativeRule { SmallestIndex, Shifted };

struct ZassenhausData {
  std::uint32_t p = 0;
  int N = 0;
  std::vector<Subgroup> D;                              // D_1..D_{N+1} (index 0 unused)
  std::vector<std::size_t> d;                           // d_1..d_N
  std::vector<std::vector<std::uint32_t>> reps;         // per degree (index 0 unused)
  std::vector<std::vector<std::int32_t>> coset_index;   // per degree: element -> digit code, -1 outside D_n
  RestrictedGLA algebra{2, 1};

  /// Class of x in D_n / D_{n+1} as a vector in the representative basis.
  FpVec class_of(std::uint32_t x, int n) const {
    std::int32_t code = coset_index.at(n).at(x);
    if (code < 0) throw std::logic_error("element not in D_" + std::to_string(n));
    FpVec v;
    std::vector<std::uint32_t> digits;
    for (std::size_t k = 0; k < d[n - 1]; ++k) {
      digits.push_back(static_cast<std::uint32_t>(code % p));
      code /= static_cast<std::int32_t>(p);
    }
    for (std::size_t k = digits.size(); k-- > 0;)
      if (digits[k]) v.emplace_back(static_cast<std::uint32_t>(k), digits[k]);
    return v;
  }
  /// Group element r_1^{e_1} ... r_d^{e_d} representing a class.
  std::uint32_t lift(const FinitePGroup& G, const FpVec& v, int n) const {
    std::uint32_t x = G.identity();
    for (auto it = v.rbegin(); it != v.rend(); ++it) x = G.mul(x, G.pow(reps[n][it->first], it->second));
    return x;
  }
};

/// gr^Z up to degree N from a dimension series D_1..D_{N+1}.
inline ZassenhausData zassenhaus_structure(const FinitePGroup& G, std::uint32_t p, const std::vector<Subgroup>& D, int N,
                                           RepresentativeRule rule = RepresentativeRule::SmallestIndex) {
  if (static_cast<int>(D.size()) < N + 2) throw InputError("dimension series must reach D_{N+1}");
  ZassenhausData Z;
  Z.p = p;
  Z.N = N;
  Z.D = std::vector<Subgroup>(D.begin(), D.begin() + N + 2);
  Z.reps.resize(N + 1);
  Z.coset_index.resize(N + 1);
  Z.algebra = RestrictedGLA(p, N);
  for (int n = 1; n <= N; ++n) {
    const Subgroup& top = D[n];
    const Subgroup& bottom = D[n + 1];
    for (auto z : bottom.elements)
      if (!top.contains(z)) throw VerificationFailure("dimension series is not descending");
    Subgroup H = bottom;
    std::vector<std::uint32_t> reps;
    for (auto x : top.elements)
      if (!H.contains(x)) {
        reps.push_back(x);
        extend_subgroup(G, H, x);
      }
    if (H.size() != top.size()) throw std::logic_error("representatives do not generate D_n");
    if (rule == RepresentativeRule::Shifted) {
      std::uint32_t shift = bottom.elements.back();
      for (auto& r : reps) r = G.mul(r, shift);
    }
    std::size_t count = 1;
    for (std::size_t k = 0; k < reps.size(); ++k) count *= p;
    if (count * bottom.size() != top.size()) throw VerificationFailure("D_n / D_{n+1} is not elementary abelian");
    std::vector<std::int32_t> code(G.size(), -1);
    for (std::size_t c = 0; c < count; ++c) {
      std::uint32_t x = G.identity();
      std::size_t rest = c;
      for (std::size_t k = 0; k < reps.size(); ++k) {
        x = G.mul(x, G.pow(reps[k], rest % p));
        rest /= p;
      }
      for (auto z : bottom.elements) {
        std::uint32_t y = G.mul(x, z);
        if (code[y] >= 0) throw VerificationFailure("D_n / D_{n+1} is not elementary abelian");
        code[y] = static_cast<std::int32_t>(c);
      }
    }
    Z.d.push_back(reps.size());
    std::vector<RestrictedLabel> labels;
    for (std::size_t k = 0; k < reps.size(); ++k)
      labels.push_back({n, k, 0, "g" + std::to_string(n) + "_" + std::to_string(k)});
    Z.algebra.set_basis(n, std::move(labels));
    Z.reps[n] = std::move(reps);
    Z.coset_index[n] = std::move(code);
  }
  for (int i = 1; i <= N; ++i)
    for (int j = i; i + j <= N; ++j)
      for (std::size_t a = 0; a < Z.d[i - 1]; ++a)
        for (std::size_t b = (i == j ? a + 1 : 0); b < Z.d[j - 1]; ++b)
          Z.algebra.set_bracket(i, a, j, b, Z.class_of(G.comm(Z.reps[i][a], Z.reps[j][b]), i + j));
  for (int n = 1; static_cast<long>(n) * p <= N; ++n)
    for (std::size_t a = 0; a < Z.d[n - 1]; ++a)
      Z.algebra.set_pmap(n, a, Z.class_of(G.pow(Z.reps[n][a], p), n * static_cast<int>(p)));
  return Z;
}

inline ZassenhausData zassenhaus_structure(const FinitePGroup& G, std::uint32_t p, int N,
                                           RepresentativeRule rule = RepresentativeRule::SmallestIndex) {
  return zassenhaus_structure(G, p, dimension_series_product(G, p, N + 1), N, rule);
}

/// (|gamma_n D_{n+1} / D_{n+1}|, |gamma_n / gamma_n^p gamma_{n+1}|)
inline std::pair<std::size_t, std::size_t> rho_image_order(const FinitePGroup& G, std::uint32_t p, int n) {
  JenningsSeries J(G, p);
  const Subgroup Dn1 = J.D(n + 1);
  const Subgroup& gn = J.gamma(n);
  Subgroup image = product_subgroup(G, gn, Dn1);
  Subgroup denom = product_subgroup(G, J.gamma_power(n, 1), J.gamma(n + 1));
  return {image.size() / Dn1.size(), gn.size() / denom.size()};
}

/// Smallest n with D_n trivial (product form).
inline int dimension_series_length(const FinitePGroup& G, std::uint32_t p) {
  JenningsSeries J(G, p);
  int n = 1;
  while (J.D(n).size() > 1) ++n;
  return n;
}

inline FinitePGroup build_group(const GroupSpec& spec, std::optional<std::size_t> cap) {
  if (spec.family == "finite_matrix" || spec.family == "heisenberg_zp") return build_matrix_group(spec, cap);
  if (spec.family == "cayley_table") return build_cayley_group(spec);
  throw InputError("family '" + spec.family + "' does not describe a finite group");
}

}  // namespace grlie
