#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grlie/error.hpp"
#include "grlie/freelie/freelie.hpp"
#include "grlie/hilbert/hilbert.hpp"
#include "grlie/liepres/liepres.hpp"
#include "grlie/restrictify/restricted.hpp"

namespace grlie {

/// Integer matrix, row-major.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Description of a group family. Only the fields relevant to `family` are used.
struct GroupSpec {
  std::string family;
  // free / one_relator / surface
  int rank = 0;
  int genus = 0;
  std::vector<std::string> generators;
  std::string relator_word;
  // raag
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  // pure_braid
  int strands = 0;
  // supersolvable_exponents / composite parts
  std::vector<int> exponents;
  // heisenberg_zp / labute_mild
  std::uint32_t p = 0;
  int n = 0;
  // finite_matrix
  std::int64_t modulus = 0;
  int dim = 0;
  std::vector<IntMatrix> matrices;
  // cayley_table
  std::vector<std::vector<std::uint32_t>> table;
  std::vector<std::uint32_t> table_generators;
};

// ---------------------------------------------------------------------------
// Lie presentations

inline LiePresentation free_presentation(int k) {
  if (k < 1) throw InputError("free presentation needs k >= 1");
  return LiePresentation{Alphabet::standard(k), {}, {}};
}

struct OneRelatorResult {
  LiePresentation presentation;
  int weight = 0;
  bool primitive = false;
  std::optional<std::string> warning;
};

/// Lie element with the given Lyndon coordinates in degree n.
inline LieElement lie_element_from_coords(const FreeLieAlgebra& L, int n, const LieCoords& c) {
  LieElement e;
  e.degree = n;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    LieElement b = standard_bracketing(L.alphabet(), L.basis(n)[it->first]);
    e.terms.emplace_back(b.terms.front().first, it->second);
  }
  return e;
}

inline OneRelatorResult one_relator_presentation(const Alphabet& a, const std::string& relator_word, int cap = 12) {
  FreeLieAlgebra L(a);
  auto word = parse_group_word(a, relator_word);
  auto lead = magnus_leading_term(L, word, cap);
  OneRelatorResult r;
  r.presentation = LiePresentation{a, {}, {}};
  r.presentation.add_relator(lie_element_from_coords(L, lead.weight, lead.coords));
  r.weight = lead.weight;
  r.primitive = lead.primitive;
  if (!lead.primitive)
    r.warning = "relator leading term is not primitive; the one-relator Lie presentation need not describe the group";
  return r;
}

/// Generators a1, b1, ..., ag, bg; relator [a1,b1]...[ag,bg] with [x,y] = x^-1 y^-1 x y.
inline OneRelatorResult surface_presentation(int genus) {
  if (genus < 1) throw InputError("surface group needs genus >= 1");
  std::vector<std::string> names;
  std::string word;
  for (int i = 1; i <= genus; ++i) {
    std::string ai = "a" + std::to_string(i), bi = "b" + std::to_string(i);
    names.push_back(ai);
    names.push_back(bi);
    word += ai + "^-1 " + bi + "^-1 " + ai + " " + bi + " ";
  }
  Alphabet a(names, std::vector<int>(names.size(), 1));
  return one_relator_presentation(a, word);
}

/// Right-angled Artin group: adjacent vertices commute.
inline LiePresentation raag_presentation(const std::vector<std::string>& vertices,
                                         const std::vector<std::pair<std::string, std::string>>& edges) {
  if (vertices.empty()) throw InputError("graph needs at least one vertex");
  Alphabet a(vertices, std::vector<int>(vertices.size(), 1));
  std::set<std::pair<int, int>> seen;
  std::vector<std::string> rels;
  for (auto& [u, v] : edges) {
    int iu = a.index_of(u), iv = a.index_of(v);
    if (iu < 0 || iv < 0) throw InputError("edge refers to unknown vertex");
    if (iu == iv) throw InputError("graph must be simple: loop at '" + u + "'");
    if (!seen.insert({std::min(iu, iv), std::max(iu, iv)}).second)
      throw InputError("graph must be simple: repeated edge " + u + "-" + v);
    rels.push_back("[" + u + "," + v + "]");
  }
  return LiePresentation::parse(a, rels);
}

inline std::string braid_generator_name(int i, int j, int strands) {
  return strands <= 9 ? "X" + std::to_string(i) + std::to_string(j)
                      : "X" + std::to_string(i) + "_" + std::to_string(j);
}

/// Kohno's presentation on generators X_ij, 1 <= i < j <= strands.
inline LiePresentation pure_braid_presentation(int strands) {
  if (strands < 2) throw InputError("pure braid group needs at least 2 strands");
  std::vector<std::string> names;
  for (int i = 1; i <= strands; ++i)
    for (int j = i + 1; j <= strands; ++j) names.push_back(braid_generator_name(i, j, strands));
  Alphabet a(names, std::vector<int>(names.size(), 1));
  auto X = [&](int i, int j) { return braid_generator_name(i, j, strands); };
  std::vector<std::string> rels;
  for (int i = 1; i <= strands; ++i)
    for (int j = i + 1; j <= strands; ++j)
      for (int k = j + 1; k <= strands; ++k) {
        rels.push_back("[" + X(i, k) + "," + X(i, j) + "+" + X(j, k) + "]");
        rels.push_back("[" + X(j, k) + "," + X(i, j) + "+" + X(i, k) + "]");
      }
  for (int i = 1; i <= strands; ++i)
    for (int r = i + 1; r <= strands; ++r)
      for (int j = i + 1; j <= strands; ++j)
        for (int s = j + 1; s <= strands; ++s)
          if (r != j && r != s) rels.push_back("[" + X(i, r) + "," + X(j, s) + "]");
  return LiePresentation::parse(a, rels);
}

/// Class-2 quotient of the free Lie algebra on a, b.
inline LiePresentation heisenberg_presentation() {
  return LiePresentation::parse(Alphabet::standard(2), {"[a,[a,b]]", "[b,[a,b]]"});
}

// ---------------------------------------------------------------------------
// Dimension tables

inline DimensionTable witt_dims(int k, int N) {
  DimensionTable t;
  for (int n = 1; n <= N; ++n) t.d.push_back(witt_rank(k, n));
  return t;
}

inline DimensionTable almost_direct_dims(const std::vector<DimensionTable>& parts, int N) {
  DimensionTable t;
  t.d.assign(static_cast<std::size_t>(N), BigInt(0));
  for (auto& part : parts)
    for (int n = 1; n <= N; ++n) t.d[n - 1] += part.at(n);
  return t;
}

inline DimensionTable free_product_all(const std::vector<DimensionTable>& parts, int N) {
  if (parts.empty()) return DimensionTable::from(std::vector<int>(N, 0));
  DimensionTable acc = parts.front().truncated(N);
  for (std::size_t i = 1; i < parts.size(); ++i) acc = free_product_dims(acc, parts[i], N);
  return acc;
}

/// Iterated almost-direct product of free groups of the given ranks.
inline DimensionTable supersolvable_dims(const std::vector<int>& exponents, int N) {
  std::vector<DimensionTable> parts;
  for (int e : exponents) {
    if (e < 1) throw InputError("supersolvable exponents must be positive");
    parts.push_back(witt_dims(e, N));
  }
  return almost_direct_dims(parts, N);
}

enum class CompositeMode { FreeProduct, AlmostDirect, Supersolvable };

inline DimensionTable composite_dims(CompositeMode mode, const std::vector<DimensionTable>& parts,
                                     const std::vector<int>& exponents, int N) {
  switch (mode) {
    case CompositeMode::FreeProduct: return free_product_all(parts, N);
    case CompositeMode::AlmostDirect: return almost_direct_dims(parts, N);
    case CompositeMode::Supersolvable: return supersolvable_dims(exponents, N);
  }
  throw std::logic_error("bad composite mode");
}

// ---------------------------------------------------------------------------
// Finite groups and restricted presentations

inline IntMatrix elementary_matrix(int dim, int row, int col) {
  IntMatrix m(dim, std::vector<std::int64_t>(dim, 0));
  for (int i = 0; i < dim; ++i) m[i][i] = 1;
  m[row][col] = 1;
  return m;
}

/// Unitriangular dim x dim matrices over Z/modulus, generated by the
/// superdiagonal elementary matrices.
inline GroupSpec unitriangular_spec(int dim, std::int64_t modulus) {
  if (dim < 2 || modulus < 2) throw InputError("unitriangular group needs dim >= 2 and modulus >= 2");
  GroupSpec g;
  g.family = "finite_matrix";
  g.dim = dim;
  g.modulus = modulus;
  for (int i = 0; i + 1 < dim; ++i) g.matrices.push_back(elementary_matrix(dim, i, i + 1));
  return g;
}

/// Finite quotient UT3(Z/modulus) of the Heisenberg pro-p group.
inline GroupSpec heisenberg_zp(std::uint32_t p, std::int64_t modulus) {
  require_prime(p);
  std::int64_t m = modulus;
  while (m > 1 && m % p == 0) m /= p;
  if (m != 1 || modulus < static_cast<std::int64_t>(p)) throw InputError("modulus must be a positive power of p");
  GroupSpec g = unitriangular_spec(3, modulus);
  g.p = p;
  return g;
}

inline GroupSpec cayley_spec(std::vector<std::vector<std::uint32_t>> table, std::vector<std::uint32_t> gens = {}) {
  GroupSpec g;
  g.family = "cayley_table";
  g.table = std::move(table);
  g.table_generators = std::move(gens);
  return g;
}

/// Direct product of cyclic groups Z/m1 x ... x Z/mr as a Cayley table.
inline GroupSpec abelian_spec(const std::vector<std::uint32_t>& orders) {
  std::uint32_t size = 1;
  for (auto m : orders) {
    if (m < 1) throw InputError("cyclic orders must be positive");
    size *= m;
  }
  auto digits = [&](std::uint32_t x) {
    std::vector<std::uint32_t> d;
    for (auto m : orders) {
      d.push_back(x % m);
      x /= m;
    }
    return d;
  };
  std::vector<std::vector<std::uint32_t>> t(size, std::vector<std::uint32_t>(size));
  for (std::uint32_t x = 0; x < size; ++x)
    for (std::uint32_t y = 0; y < size; ++y) {
      auto dx = digits(x), dy = digits(y);
      std::uint32_t z = 0, place = 1;
      for (std::size_t i = 0; i < orders.size(); ++i) {
        z += (dx[i] + dy[i]) % orders[i] * place;
        place *= orders[i];
      }
      t[x][y] = z;
    }
  std::vector<std::uint32_t> gens;
  std::uint32_t place = 1;
  for (auto m : orders) {
    gens.push_back(place);
    place *= m;
  }
  return cayley_spec(std::move(t), std::move(gens));
}

/// Quaternion group {±1, ±i, ±j, ±k}; index 2u + s encodes sign s of unit u.
inline GroupSpec quaternion_spec() {
  // unit products: units 0=1, 1=i, 2=j, 3=k
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<std::uint32_t>> t(8, std::vector<std::uint32_t>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u = x / 2, v = y / 2;
      int s = (x % 2 + y % 2 + sign[u][v]) % 2;
      t[x][y] = static_cast<std::uint32_t>(2 * unit[u][v] + s);
    }
  return cayley_spec(std::move(t), {2, 4});
}

/// Relators P(x_k) - [x_{k-1}, x_k] on generators x0..x_{n-1}, indices mod n.
inline RestrictedPresentation labute_mild(int n, std::uint32_t p) {
  require_prime(p);
  if (n < 3) throw InputError("labute_mild needs n >= 3");
  if (p == 2) throw InputError("labute_mild needs an odd prime");
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("x" + std::to_string(k));
  std::vector<std::string> rels;
  for (int k = 0; k < n; ++k)
    rels.push_back("P(" + names[k] + ") - [" + names[(k + n - 1) % n] + "," + names[k] + "]");
  return RestrictedPresentation::parse(Alphabet(names, std::vector<int>(n, 1)), rels);
}

/// Lie presentation attached to a catalog spec (families with one).
inline LiePresentation presentation_for(const GroupSpec& s) {
  if (s.family == "free") return free_presentation(s.rank);
  if (s.family == "surface") return surface_presentation(s.genus).presentation;
  if (s.family == "one_relator") {
    Alphabet a(s.generators, std::vector<int>(s.generators.size(), 1));
    return one_relator_presentation(a, s.relator_word).presentation;
  }
  if (s.family == "raag") return raag_presentation(s.vertices, s.edges);
  if (s.family == "pure_braid") return pure_braid_presentation(s.strands);
  if (s.family == "heisenberg_zp" || s.family == "heisenberg") return heisenberg_presentation();
  throw InputError("family '" + s.family + "' has no Lie presentation");
}

}  // namespace grlie
