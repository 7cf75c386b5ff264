#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "grlie/error.hpp"
#include "grlie/exactalg/rings.hpp"
#include "grlie/exactalg/sparse_echelon.hpp"
#include "grlie/freelie/expr.hpp"
#include "grlie/freelie/freelie.hpp"

namespace grlie {

/// Coordinates over F_p in some graded basis; indices descending.
using FpVec = SparseRow<std::uint32_t>;

// ---------------------------------------------------------------------------
// Lie elements from expressions

namespace detail {

using TreeTerms = std::vector<std::pair<TreePtr, std::int64_t>>;

inline TreeTerms expr_to_trees(const Alphabet& a, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Generator: {
      int g = a.index_of(e.name);
      if (g < 0) throw InputError("unknown generator '" + e.name + "'");
      return {{BracketTree::leaf(g), 1}};
    }
    case Expr::Kind::Bracket: {
      TreeTerms l = expr_to_trees(a, *e.left), r = expr_to_trees(a, *e.right), out;
      for (auto& [tl, cl] : l)
        for (auto& [tr, cr] : r) out.emplace_back(BracketTree::node(tl, tr), checked::mul(cl, cr));
      return out;
    }
    case Expr::Kind::Sum: {
      TreeTerms out;
      for (auto& [c, t] : e.terms)
        for (auto& [tree, d] : expr_to_trees(a, *t)) out.emplace_back(tree, checked::mul(c, d));
      return out;
    }
    case Expr::Kind::PMap: throw InputError("P(...) is only allowed in restricted relators");
    case Expr::Kind::Integer: throw InputError("bare integer is not a Lie element");
  }
  throw std::logic_error("bad expression kind");
}

}  // namespace detail

/// Parses a homogeneous Lie expression over Z.
inline LieElement parse_lie_element(const Alphabet& a, const std::string& text) {
  ExprPtr e = parse_lie_expression(text);
  LieElement x;
  x.terms = detail::expr_to_trees(a, *e);
  if (x.terms.empty()) throw InputError("empty Lie expression");
  x.degree = x.terms.front().first->degree(a);
  for (auto& [t, c] : x.terms)
    if (t->degree(a) != x.degree) throw InputError("inhomogeneous Lie expression \"" + text + "\"");
  return x;
}

// ---------------------------------------------------------------------------
// Presentations

struct LiePresentation {
  Alphabet alphabet;
  std::vector<LieElement> relators;
  std::vector<std::string> relator_text;  // as given, for reporting

  static LiePresentation parse(Alphabet a, const std::vector<std::string>& relators) {
    LiePresentation p;
    p.alphabet = std::move(a);
    p.alphabet.validate();
    for (auto& r : relators) p.add_relator(parse_lie_element(p.alphabet, r), r);
    return p;
  }

  void add_relator(LieElement r, std::string text = {}) {
    if (r.modulus != 0) throw InputError("presentation relators must have integer coefficients");
    if (r.degree < 2) throw InputError("relators must have degree >= 2");
    if (text.empty()) {
      for (auto& [t, c] : r.terms) {
        if (!text.empty()) text += c < 0 ? " - " : " + ";
        else if (c < 0) text += "-";
        std::int64_t m = c < 0 ? -c : c;
        if (m != 1) text += std::to_string(m) + "*";
        text += t->to_string(alphabet);
      }
    }
    relators.push_back(std::move(r));
    relator_text.push_back(std::move(text));
  }
};

/// Rows spanning the degree-n part of the ideal generated by the relators:
/// left-normed brackets of generators with relators, in Lyndon coordinates
/// of the free Lie algebra. Built degree by degree from reduced lower spans.
template <class Ring>
class IdealSpans {
 public:
  IdealSpans(const FreeLieAlgebra& free, const LiePresentation& pres, Ring ring, int max_degree)
      : free_(free), ring_(std::move(ring)) {
    if (!(free.alphabet() == pres.alphabet)) throw InputError("presentation alphabet mismatch");
    std::map<int, std::vector<LieCoords>> relators;
    for (auto& r : pres.relators) relators[r.degree].push_back(free.lyndon_coords(r));
    const Alphabet& a = free.alphabet();
    spans_.reserve(max_degree + 1);
    spans_.emplace_back(ring_, 0);
    for (int n = 1; n <= max_degree; ++n) {
      SparseEchelon<Ring> span(ring_, free.dim(n));
      for (auto& r : relators[n]) span.insert(convert(r));
      for (int g = 0; g < a.size(); ++g) {
        const int w = a.weights[g];
        if (w >= n) continue;
        const std::size_t gi = static_cast<std::size_t>(free.index_of(Word::letter(g)));
        for (const auto& row : spans_[n - w].rows()) {
          std::map<std::uint32_t, typename Ring::value_type, std::greater<>> acc;
          for (const auto& [c, v] : row)
            for (const auto& [k, x] : free.bracket_basis(w, gi, n - w, c)) {
              auto& slot = acc.try_emplace(k, ring_.zero()).first->second;
              slot = ring_.add(slot, ring_.mul(v, ring_.from_int(x)));
            }
          typename SparseEchelon<Ring>::Row out;
          for (auto& [k, v] : acc)
            if (!ring_.is_zero(v)) out.emplace_back(k, v);
          if (!out.empty()) span.insert(std::move(out));
        }
      }
      span.reduce_fully();
      spans_.push_back(std::move(span));
    }
  }

  int max_degree() const { return static_cast<int>(spans_.size()) - 1; }
  const SparseEchelon<Ring>& degree(int n) const { return spans_.at(n); }

  typename SparseEchelon<Ring>::Row convert(const LieCoords& c) const {
    typename SparseEchelon<Ring>::Row out;
    for (auto& [i, v] : c) {
      auto x = ring_.from_int(v);
      if (!ring_.is_zero(x)) out.emplace_back(i, x);
    }
    return out;
  }

 private:
  const FreeLieAlgebra& free_;
  Ring ring_;
  std::vector<SparseEchelon<Ring>> spans_;
};

/// Matrix (as sparse rows in Lyndon coordinates) whose row space is the
/// degree-n piece of the relator ideal.
inline std::vector<LieCoords> ideal_degree_span(const LiePresentation& pres, int n) {
  FreeLieAlgebra free(pres.alphabet);
  IdealSpans<Int64Ring> spans(free, pres, Int64Ring{}, n);
  std::vector<LieCoords> rows;
  for (auto& r : spans.degree(n).rows()) rows.push_back(r);
  return rows;
}

inline std::vector<FpVec> ideal_degree_span_fp(const LiePresentation& pres, std::uint32_t p, int n) {
  FreeLieAlgebra free(pres.alphabet);
  IdealSpans<PrimeField> spans(free, pres, PrimeField(p), n);
  return spans.degree(n).rows();
}

// ---------------------------------------------------------------------------
// Graded Lie algebras over F_p

/// Finite-degree truncation of an N-graded Lie algebra over F_p, with
/// bracket structure constants for every basis pair of total degree <= N.
class GradedLieAlgebraFp {
 public:
  GradedLieAlgebraFp(std::uint32_t p, int max_degree) : field_(p), N_(max_degree), labels_(max_degree + 1) {
    if (max_degree < 1) throw InputError("max degree must be >= 1");
    table_.resize(max_degree + 1);
    for (auto& row : table_) row.resize(max_degree + 1);
  }

  std::uint32_t p() const { return field_.p; }
  const PrimeField& field() const { return field_; }
  int max_degree() const { return N_; }
  std::size_t dim(int n) const { return n >= 1 && n <= N_ ? labels_[n].size() : 0; }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (int n = 1; n <= N_; ++n) d.push_back(dim(n));
    return d;
  }
  const std::vector<std::string>& labels(int n) const { return labels_.at(n); }

  void set_basis(int n, std::vector<std::string> labels) {
    labels_.at(n) = std::move(labels);
    for (int m = 1; m + n <= N_; ++m) {
      table_[n][m].assign(dim(n) * dim(m), {});
      table_[m][n].assign(dim(m) * dim(n), {});
    }
  }

  /// Sets [e_a (deg i), e_b (deg j)] = v and the antisymmetric entry.
  void set_bracket(int i, std::size_t a, int j, std::size_t b, FpVec v) {
    check(i, j);
    FpVec neg;
    for (auto& [k, x] : v) neg.emplace_back(k, field_.neg(x));
    table_[j][i][b * dim(i) + a] = std::move(neg);
    table_[i][j][a * dim(j) + b] = std::move(v);
  }

  const FpVec& bracket_basis(int i, std::size_t a, int j, std::size_t b) const {
    check(i, j);
    return table_[i][j][a * dim(j) + b];
  }

  FpVec bracket(const FpVec& x, int i, const FpVec& y, int j) const {
    if (i + j > N_) throw InputError("bracket degree " + std::to_string(i + j) + " exceeds N");
    std::map<std::uint32_t, std::uint32_t, std::greater<>> acc;
    for (auto& [a, u] : x)
      for (auto& [b, v] : y) {
        const std::uint32_t uv = field_.mul(u, v);
        for (auto& [k, c] : bracket_basis(i, a, j, b)) acc[k] = field_.add(acc[k], field_.mul(uv, c));
      }
    FpVec out;
    for (auto& [k, c] : acc)
      if (c) out.emplace_back(k, c);
    return out;
  }

  /// Optional link to a presentation: Lyndon words of the basis and the
  /// projection from free Lyndon coordinates.
  struct PresentationData {
    Alphabet alphabet;
    std::shared_ptr<const FreeLieAlgebra> free;
    std::vector<std::vector<Word>> basis_words;             // per degree
    std::vector<std::vector<std::int64_t>> position;        // free index -> basis position or -1
    std::vector<std::map<std::uint32_t, FpVec>> reduction;  // pivot free index -> quotient coords of -(rest)
  };

  const PresentationData* presentation() const { return pres_.get(); }
  void attach(std::shared_ptr<const PresentationData> d) { pres_ = std::move(d); }

  /// Image of a free Lie element (degree n, integer Lyndon coordinates).
  FpVec project(int n, const LieCoords& c) const {
    if (!pres_) throw std::logic_error("algebra has no presentation data");
    std::map<std::uint32_t, std::uint32_t, std::greater<>> acc;
    for (auto& [i, v] : c) {
      std::uint32_t x = field_.from_int(v);
      if (!x) continue;
      std::int64_t pos = pres_->position[n][i];
      if (pos >= 0) {
        acc[static_cast<std::uint32_t>(pos)] = field_.add(acc[static_cast<std::uint32_t>(pos)], x);
      } else {
        for (auto& [k, y] : pres_->reduction[n].at(i)) acc[k] = field_.add(acc[k], field_.mul(x, y));
      }
    }
    FpVec out;
    for (auto& [k, v] : acc)
      if (v) out.emplace_back(k, v);
    return out;
  }

 private:
  void check(int i, int j) const {
    if (i < 1 || j < 1 || i + j > N_) throw InputError("bracket degrees out of range");
  }

  PrimeField field_;
  int N_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<std::vector<FpVec>>> table_;  // [i][j][a*dim(j)+b]
  std::shared_ptr<const PresentationData> pres_;
};

/// Quotient of the free Lie algebra by the relator ideal, over F_p, up to
/// degree N. Basis per degree: the lexicographically earliest Lyndon words
/// completing the ideal span.
inline GradedLieAlgebraFp quotient_fp(const LiePresentation& pres, std::uint32_t p, int N) {
  PrimeField field(p);
  auto free = std::make_shared<FreeLieAlgebra>(pres.alphabet);
  IdealSpans<PrimeField> spans(*free, pres, field, N);

  auto data = std::make_shared<GradedLieAlgebraFp::PresentationData>();
  data->alphabet = pres.alphabet;
  data->free = free;
  data->basis_words.resize(N + 1);
  data->position.resize(N + 1);
  data->reduction.resize(N + 1);

  GradedLieAlgebraFp L(p, N);
  for (int n = 1; n <= N; ++n) {
    const auto& span = spans.degree(n);
    auto cols = span.free_columns();
    data->position[n].assign(free->dim(n), -1);
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      data->position[n][cols[k]] = static_cast<std::int64_t>(k);
      data->basis_words[n].push_back(free->basis(n)[cols[k]]);
      labels.push_back(pres.alphabet.spell(free->basis(n)[cols[k]]));
    }
    for (const auto& row : span.rows()) {
      FpVec red;  // pivot == -(rest) in the quotient
      for (std::size_t k = 1; k < row.size(); ++k) {
        std::int64_t pos = data->position[n][row[k].first];
        if (pos < 0) throw std::logic_error("ideal span not fully reduced");
        red.emplace_back(static_cast<std::uint32_t>(pos), field.neg(row[k].second));
      }
      data->reduction[n].emplace(row.front().first, std::move(red));
    }
    L.set_basis(n, std::move(labels));
  }
  L.attach(data);
  for (int i = 1; i <= N; ++i)
    for (int j = i; i + j <= N; ++j)
      for (std::size_t a = 0; a < L.dim(i); ++a)
        for (std::size_t b = (i == j ? a + 1 : 0); b < L.dim(j); ++b) {
          std::size_t fa = static_cast<std::size_t>(free->index_of(data->basis_words[i][a]));
          std::size_t fb = static_cast<std::size_t>(free->index_of(data->basis_words[j][b]));
          L.set_bracket(i, a, j, b, L.project(i + j, free->bracket_basis(i, fa, j, fb)));
        }
  return L;
}

// ---------------------------------------------------------------------------
// Over Z

struct GradedAbelianInvariants {
  int max_degree = 0;
  std::vector<AbelianInvariants> degrees;  // index n-1 for degree n
  bool is_gamma_free_up_to_N = true;

  std::size_t fp_dim(int n, std::uint32_t p) const {
    const auto& d = degrees.at(n - 1);
    std::size_t count = d.free_rank;
    for (auto& t : d.torsion)
      if (t % p == 0) ++count;
    return count;
  }
};

namespace detail {

template <class Ring>
GradedAbelianInvariants quotient_z_with(const LiePresentation& pres, int N) {
  FreeLieAlgebra free(pres.alphabet);
  IdealSpans<Ring> spans(free, pres, Ring{}, N);
  GradedAbelianInvariants out;
  out.max_degree = N;
  for (int n = 1; n <= N; ++n) {
    out.degrees.push_back(lattice_cokernel(spans.degree(n)));
    if (!out.degrees.back().torsion.empty()) out.is_gamma_free_up_to_N = false;
  }
  return out;
}

}  // namespace detail

/// Abelian-group invariants of each degree of the quotient Lie ring over Z,
/// and whether every degree up to N is torsion-free.
inline GradedAbelianInvariants quotient_z(const LiePresentation& pres, int N) {
  try {
    return detail::quotient_z_with<Int64Ring>(pres, N);
  } catch (const OverflowError&) {
    return detail::quotient_z_with<BigIntRing>(pres, N);
  }
}

}  // namespace grlie
