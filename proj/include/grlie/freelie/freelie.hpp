#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grlie/error.hpp"
#include "grlie/exactalg/rings.hpp"
#include "grlie/exactalg/sparse_echelon.hpp"
#include "grlie/freelie/word.hpp"

namespace grlie {

/// Ordered generators with positive integer weights (degrees).
struct Alphabet {
  std::vector<std::string> names;
  std::vector<int> weights;

  Alphabet() = default;
  Alphabet(std::vector<std::string> n, std::vector<int> w) : names(std::move(n)), weights(std::move(w)) {
    validate();
  }

  /// k weight-1 generators named a, b, c, ... (x0, x1, ... beyond 26).
  static Alphabet standard(int k) {
    Alphabet a;
    for (int i = 0; i < k; ++i) {
      a.names.push_back(k <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
      a.weights.push_back(1);
    }
    a.validate();
    return a;
  }

  int size() const { return static_cast<int>(names.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return -1;
  }

  int weight(const Word& w) const {
    int s = 0;
    for (int i = 0; i < w.length(); ++i) s += weights[w[i]];
    return s;
  }

  std::string spell(const Word& w) const {
    std::string out;
    bool single = true;
    for (auto& n : names) single = single && n.size() == 1;
    for (int i = 0; i < w.length(); ++i) {
      if (!single && i) out += '.';
      out += names[w[i]];
    }
    return out;
  }

  void validate() const {
    if (names.size() != weights.size()) throw InputError("alphabet names/weights size mismatch");
    if (names.empty()) throw InputError("alphabet must have at least one generator");
    if (static_cast<int>(names.size()) > Word::kMaxLetters) throw InputError("too many generators");
    for (int w : weights)
      if (w < 1) throw InputError("generator weights must be >= 1");
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j)
        if (names[i] == names[j]) throw InputError("duplicate generator name " + names[i]);
  }

  bool operator==(const Alphabet&) const = default;
};

// ---------------------------------------------------------------------------
// Words, Lyndon words, Witt ranks

inline bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (int i = 1; i < w.length(); ++i)
    if (!(w < w.rotation(i))) return false;
  return true;
}

inline int mobius(long long n) {
  int mu = 1;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

/// Rank of the degree-n component of the free Lie ring on k generators:
/// (1/n) * sum over d | n of mu(d) k^(n/d).
inline BigInt witt_rank(long long k, long long n) {
  if (k < 1 || n < 1) throw InputError("witt_rank needs k >= 1 and n >= 1");
  BigInt sum = 0;
  for (long long d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    BigInt term = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n / d));
    sum += mu * term;
  }
  return sum / n;
}

/// All Lyndon words of total weight n, ascending.
inline std::vector<Word> lyndon_words(const Alphabet& a, int n) {
  if (n < 1) throw InputError("lyndon_words needs n >= 1");
  const int k = a.size();
  int min_w = *std::min_element(a.weights.begin(), a.weights.end());
  int max_len = n / min_w;
  if (k == 1) return n == a.weights[0] ? std::vector<Word>{Word::letter(0)} : std::vector<Word>{};
  if (max_len > Word::kMaxLength) throw InputError("degree too large for word encoding");
  // Duval's algorithm enumerates Lyndon words of length <= max_len in lex order.
  std::vector<Word> out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    Word word = Word::from_letters(w);
    if (a.weight(word) == n) out.push_back(word);
    int m = static_cast<int>(w.size());
    while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  return out;
}

/// Standard factorization w = u v, v the longest proper Lyndon suffix.
inline std::pair<Word, Word> standard_factorization(const Word& w) {
  if (!is_lyndon(w) || w.length() < 2) throw InputError("standard factorization needs a Lyndon word of length >= 2");
  for (int i = 1; i < w.length(); ++i) {
    Word v = w.suffix_from(i);
    if (is_lyndon(v)) return {w.prefix(i), v};
  }
  throw std::logic_error("unreachable: every word has a Lyndon final letter");
}

// ---------------------------------------------------------------------------
// Associative polynomials

/// Homogeneous element of the free associative algebra, sorted by word.
struct AssocPoly {
  std::map<Word, std::int64_t> terms;

  void add(const Word& w, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(w, c);
    if (!inserted) {
      it->second = checked::add(it->second, c);
      if (it->second == 0) terms.erase(it);
    }
  }
  void add_scaled(const AssocPoly& o, std::int64_t f) {
    for (auto& [w, c] : o.terms) add(w, checked::mul(f, c));
  }
  AssocPoly reduced_mod(std::uint32_t p) const {
    AssocPoly r;
    for (auto& [w, c] : terms) {
      std::int64_t v = ((c % static_cast<std::int64_t>(p)) + p) % p;
      if (v) r.terms.emplace(w, v);
    }
    return r;
  }
  bool is_zero() const { return terms.empty(); }
  bool operator==(const AssocPoly&) const = default;

  friend AssocPoly operator*(const AssocPoly& x, const AssocPoly& y) {
    AssocPoly r;
    for (auto& [u, a] : x.terms)
      for (auto& [v, b] : y.terms) r.add(u * v, checked::mul(a, b));
    return r;
  }
  friend AssocPoly operator-(const AssocPoly& x, const AssocPoly& y) {
    AssocPoly r = x;
    r.add_scaled(y, -1);
    return r;
  }
  friend AssocPoly operator+(const AssocPoly& x, const AssocPoly& y) {
    AssocPoly r = x;
    r.add_scaled(y, 1);
    return r;
  }
  static AssocPoly commutator(const AssocPoly& x, const AssocPoly& y) { return x * y - y * x; }
};

// ---------------------------------------------------------------------------
// Bracket trees and Lie elements

struct BracketTree;
using TreePtr = std::shared_ptr<const BracketTree>;

/// Binary bracket tree; a leaf is a generator.
struct BracketTree {
  int letter = -1;
  TreePtr left, right;

  static TreePtr leaf(int l) {
    auto t = std::make_shared<BracketTree>();
    t->letter = l;
    return t;
  }
  static TreePtr node(TreePtr a, TreePtr b) {
    auto t = std::make_shared<BracketTree>();
    t->left = std::move(a);
    t->right = std::move(b);
    return t;
  }
  bool is_leaf() const { return letter >= 0; }

  int degree(const Alphabet& a) const {
    return is_leaf() ? a.weights[letter] : left->degree(a) + right->degree(a);
  }
  std::string to_string(const Alphabet& a) const {
    return is_leaf() ? a.names[letter] : "[" + left->to_string(a) + "," + right->to_string(a) + "]";
  }
  AssocPoly expand() const {
    if (is_leaf()) {
      AssocPoly p;
      p.add(Word::letter(letter), 1);
      return p;
    }
    return AssocPoly::commutator(left->expand(), right->expand());
  }
};

/// Homogeneous Lie element as a combination of bracket trees. modulus == 0
/// means integer coefficients, otherwise coefficients live in F_modulus.
struct LieElement {
  int degree = 0;
  std::uint32_t modulus = 0;
  std::vector<std::pair<TreePtr, std::int64_t>> terms;

  static LieElement generator(const Alphabet& a, int l, std::uint32_t modulus = 0) {
    LieElement e;
    e.degree = a.weights.at(l);
    e.modulus = modulus;
    e.terms.emplace_back(BracketTree::leaf(l), 1);
    return e;
  }
};

inline LieElement standard_bracketing(const Alphabet& a, const Word& w) {
  if (!is_lyndon(w)) throw InputError("standard bracketing needs a Lyndon word");
  std::function<TreePtr(const Word&)> build = [&](const Word& u) -> TreePtr {
    if (u.length() == 1) return BracketTree::leaf(u[0]);
    auto [x, y] = standard_factorization(u);
    return BracketTree::node(build(x), build(y));
  };
  LieElement e;
  e.degree = a.weight(w);
  e.terms.emplace_back(build(w), 1);
  return e;
}

inline AssocPoly expand_assoc(const Alphabet& a, const LieElement& x) {
  AssocPoly out;
  for (auto& [t, c] : x.terms) {
    if (t->degree(a) != x.degree) throw InputError("inhomogeneous Lie element");
    out.add_scaled(t->expand(), c);
  }
  return x.modulus ? out.reduced_mod(x.modulus) : out;
}

/// Lyndon coordinates: sparse, indices into lyndon_words(alphabet, degree),
/// descending order (see SparseRow).
using LieCoords = SparseRow<std::int64_t>;

/// Free Lie ring on an alphabet with the Lyndon basis.
///
/// Degree components, basis expansions and basis brackets are cached on first
/// use; the cache is guarded so a shared instance can be queried from several
/// threads.
class FreeLieAlgebra {
 public:
  explicit FreeLieAlgebra(Alphabet a) : alphabet_(std::move(a)) { alphabet_.validate(); }

  const Alphabet& alphabet() const { return alphabet_; }

  const std::vector<Word>& basis(int n) const { return component(n).words; }
  std::size_t dim(int n) const { return component(n).words.size(); }

  /// Index of a Lyndon word in its degree component, or -1.
  long index_of(const Word& w) const {
    const auto& c = component(alphabet_.weight(w));
    auto it = c.index.find(w);
    return it == c.index.end() ? -1 : static_cast<long>(it->second);
  }

  /// Expansion of the standard bracketing of basis word i of degree n.
  const AssocPoly& expansion(int n, std::size_t i) const {
    const auto& c = component(n);
    std::lock_guard lock(mutex_);
    auto& slot = c.expansions[i];
    if (!slot) {
      const Word& w = c.words[i];
      AssocPoly p;
      if (w.length() == 1) {
        p.add(w, 1);
      } else {
        auto [u, v] = standard_factorization(w);
        const AssocPoly& pu = expansion(alphabet_.weight(u), static_cast<std::size_t>(index_of(u)));
        const AssocPoly& pv = expansion(alphabet_.weight(v), static_cast<std::size_t>(index_of(v)));
        p = AssocPoly::commutator(pu, pv);
      }
      slot = std::make_unique<AssocPoly>(std::move(p));
    }
    return *slot;
  }

  /// Solves the triangular system expansion(w) = w + (larger words) for a Lie
  /// polynomial; throws if the polynomial is not Lie.
  LieCoords lyndon_coords(const AssocPoly& poly, int n) const {
    std::map<Word, std::int64_t> work(poly.terms.begin(), poly.terms.end());
    std::vector<std::pair<std::uint32_t, std::int64_t>> coords;
    while (!work.empty()) {
      auto [w, c] = *work.begin();
      if (alphabet_.weight(w) != n) throw InputError("polynomial not homogeneous of degree " + std::to_string(n));
      long idx = index_of(w);
      if (idx < 0) throw InputError("polynomial is not a Lie element (leading word " + alphabet_.spell(w) + ")");
      coords.emplace_back(static_cast<std::uint32_t>(idx), c);
      for (auto& [u, d] : expansion(n, static_cast<std::size_t>(idx)).terms) {
        auto [it, inserted] = work.try_emplace(u, checked::mul(-c, d));
        if (!inserted) {
          it->second = checked::sub(it->second, checked::mul(c, d));
          if (it->second == 0) work.erase(it);
        }
      }
    }
    std::sort(coords.begin(), coords.end(), [](auto& x, auto& y) { return x.first > y.first; });
    return coords;
  }

  LieCoords lyndon_coords(const LieElement& x) const {
    LieCoords c = lyndon_coords(expand_assoc(alphabet_, x), x.degree);
    if (x.modulus) c = reduce_coords(c, x.modulus);
    return c;
  }

  AssocPoly expand_coords(const LieCoords& x, int n) const {
    AssocPoly out;
    for (auto& [i, c] : x) out.add_scaled(expansion(n, i), c);
    return out;
  }

  /// Bracket of basis elements (degree n1, index i1) and (n2, i2).
  const LieCoords& bracket_basis(int n1, std::size_t i1, int n2, std::size_t i2) const {
    const Key key{n1, static_cast<std::uint32_t>(i1), n2, static_cast<std::uint32_t>(i2)};
    {
      std::lock_guard lock(mutex_);
      auto it = bracket_cache_.find(key);
      if (it != bracket_cache_.end()) return it->second;
    }
    LieCoords r;
    if (!(n1 == n2 && i1 == i2)) {
      AssocPoly p = AssocPoly::commutator(expansion(n1, i1), expansion(n2, i2));
      r = lyndon_coords(p, n1 + n2);
    }
    std::lock_guard lock(mutex_);
    return bracket_cache_.try_emplace(key, std::move(r)).first->second;
  }

  /// Bracket of coordinate vectors (integer coefficients).
  LieCoords bracket(const LieCoords& x, int nx, const LieCoords& y, int ny) const {
    std::map<std::uint32_t, std::int64_t, std::greater<>> acc;
    for (auto& [i, a] : x)
      for (auto& [j, b] : y) {
        std::int64_t ab = checked::mul(a, b);
        for (auto& [k, c] : bracket_basis(nx, i, ny, j)) acc[k] = checked::add(acc[k], checked::mul(ab, c));
      }
    LieCoords out;
    for (auto& [k, v] : acc)
      if (v) out.emplace_back(k, v);
    return out;
  }

  static LieCoords reduce_coords(const LieCoords& c, std::uint32_t p) {
    LieCoords out;
    for (auto& [i, v] : c) {
      std::int64_t r = ((v % static_cast<std::int64_t>(p)) + p) % p;
      if (r) out.emplace_back(i, r);
    }
    return out;
  }

 private:
  struct Component {
    std::vector<Word> words;
    std::unordered_map<Word, std::size_t, WordHash> index;
    mutable std::vector<std::unique_ptr<AssocPoly>> expansions;
  };
  struct Key {
    int n1;
    std::uint32_t i1;
    int n2;
    std::uint32_t i2;
    auto operator<=>(const Key&) const = default;
  };

  const Component& component(int n) const {
    if (n < 1) throw InputError("degree must be >= 1");
    std::lock_guard lock(mutex_);
    auto it = components_.find(n);
    if (it != components_.end()) return *it->second;
    auto c = std::make_unique<Component>();
    c->words = lyndon_words(alphabet_, n);
    for (std::size_t i = 0; i < c->words.size(); ++i) c->index.emplace(c->words[i], i);
    c->expansions.resize(c->words.size());
    return *components_.emplace(n, std::move(c)).first->second;
  }

  Alphabet alphabet_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<int, std::unique_ptr<Component>> components_;
  mutable std::map<Key, LieCoords> bracket_cache_;
};

inline LieCoords lyndon_coords(const FreeLieAlgebra& L, const LieElement& x) { return L.lyndon_coords(x); }

/// Bracket of two Lie elements, returned in Lyndon coordinates.
inline LieCoords bracket(const FreeLieAlgebra& L, const LieElement& x, const LieElement& y) {
  if (x.modulus != y.modulus) throw InputError("bracket of elements over different rings");
  LieCoords c = L.bracket(L.lyndon_coords(x), x.degree, L.lyndon_coords(y), y.degree);
  return x.modulus ? FreeLieAlgebra::reduce_coords(c, x.modulus) : c;
}

// ---------------------------------------------------------------------------
// Magnus expansion leading terms of group words

/// Letter of a free-group word: generator index and exponent sign.
struct GroupLetter {
  int gen;
  bool inverse;
};

struct MagnusLeadingTerm {
  int weight;
  LieCoords coords;  // in the degree-`weight` Lyndon basis
  bool primitive;
};

/// Lowest-degree homogeneous part of the Magnus expansion g -> 1 + X_g,
/// g^-1 -> 1 - X_g + X_g^2 - ..., truncated above degree cap.
inline MagnusLeadingTerm magnus_leading_term(const FreeLieAlgebra& L, const std::vector<GroupLetter>& word, int cap) {
  const Alphabet& a = L.alphabet();
  if (word.empty()) throw InputError("trivial word");
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i].gen == word[i + 1].gen && word[i].inverse != word[i + 1].inverse)
      throw InputError("word is not reduced");
  for (auto& l : word)
    if (l.gen < 0 || l.gen >= a.size()) throw InputError("generator index out of range");

  // Truncated polynomials as maps degree -> poly; the constant term is tracked separately.
  std::map<Word, std::int64_t> cur;  // nonconstant part
  std::int64_t constant = 1;
  for (auto& l : word) {
    // factor = 1 + sum_{k>=1} s^k X^k, s = -1 for inverses
    std::map<Word, std::int64_t> factor;
    Word xk;
    std::int64_t sign = 1;  // (-1)^k for inverses
    for (int k = 1; k * a.weights[l.gen] <= cap; ++k) {
      xk = xk * Word::letter(l.gen);
      sign = -sign;
      factor[xk] = l.inverse ? sign : 1;
      if (!l.inverse) break;
    }
    std::map<Word, std::int64_t> next;
    auto add = [&](const Word& w, std::int64_t c) {
      if (a.weight(w) > cap || c == 0) return;
      auto& slot = next[w];
      slot = checked::add(slot, c);
    };
    for (auto& [w, c] : cur) add(w, c);                                       // cur * 1
    for (auto& [w, c] : factor) add(w, checked::mul(constant, c));            // 1 * factor
    for (auto& [u, c] : cur)
      for (auto& [v, d] : factor)
        if (a.weight(u) + a.weight(v) <= cap) add(u * v, checked::mul(c, d));  // cur * factor
    cur.clear();
    for (auto& [w, c] : next)
      if (c) cur.emplace(w, c);
  }
  // constant stays 1 throughout
  int lowest = -1;
  for (auto& [w, c] : cur) {
    int d = a.weight(w);
    if (lowest < 0 || d < lowest) lowest = d;
  }
  if (lowest < 0) throw InputError("weight > " + std::to_string(cap));
  AssocPoly lead;
  for (auto& [w, c] : cur)
    if (a.weight(w) == lowest) lead.add(w, c);
  MagnusLeadingTerm out;
  out.weight = lowest;
  out.coords = L.lyndon_coords(lead, lowest);
  std::int64_t g = 0;
  for (auto& [i, c] : out.coords) g = std::gcd(g, c < 0 ? -c : c);
  out.primitive = g == 1;
  return out;
}

/// Parses words like "a b A B" or "a*b*a^-1*b^-1"; upper case or ^-1 is the inverse.
inline std::vector<GroupLetter> parse_group_word(const Alphabet& a, const std::string& text) {
  std::vector<GroupLetter> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '*' || text[i] == '.')) ++i;
  };
  skip();
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
    if (j == i) throw InputError("bad group word near '" + text.substr(i) + "'");
    std::string name = text.substr(i, j - i);
    i = j;
    int exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t k = i;
      if (k < text.size() && (text[k] == '-' || text[k] == '+')) ++k;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      exponent = std::stoi(text.substr(i, k - i));
      i = k;
    }
    int gen = a.index_of(name);
    if (gen < 0) {
      std::string lower = name;
      for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      int g2 = a.index_of(lower);
      if (g2 >= 0 && lower != name) {
        gen = g2;
        exponent = -exponent;
      }
    }
    if (gen < 0) throw InputError("unknown generator '" + name + "' in group word");
    for (int e = 0; e < std::abs(exponent); ++e) {
      GroupLetter l{gen, exponent < 0};
      if (!out.empty() && out.back().gen == l.gen && out.back().inverse != l.inverse) out.pop_back();
      else out.push_back(l);
    }
    skip();
  }
  return out;
}

}  // namespace grlie
