#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grlie/error.hpp"
#include "grlie/exactalg/rings.hpp"
#include "grlie/exactalg/sparse_echelon.hpp"
#include "grlie/liepres/liepres.hpp"

namespace grlie {

namespace fpvec {

inline FpVec add(const PrimeField& f, const FpVec& x, const FpVec& y, std::uint32_t scale = 1) {
  return sparse_axpy(f, x, scale, y);
}
inline FpVec scale(const PrimeField& f, std::uint32_t c, const FpVec& x) { return sparse_scale(f, c, x); }
inline FpVec unit(std::uint32_t i) { return {{i, 1u}}; }

}  // namespace fpvec

/// Basis label b^[p^j]: the j-th p-map iterate of basis element `base_index`
/// of degree `base_degree` in the underlying Lie algebra. Degree is
/// base_degree * p^j.
struct RestrictedLabel {
  int base_degree = 0;
  std::size_t base_index = 0;
  int power = 0;
  std::string text;

  bool operator==(const RestrictedLabel&) const = default;
};

/// Truncated N-graded restricted Lie algebra over F_p given by structure
/// constants: brackets of basis pairs with total degree <= N and p-map images
/// of basis elements with p * degree <= N.
class RestrictedGLA {
 public:
  RestrictedGLA(std::uint32_t p, int max_degree)
      : field_(p), N_(max_degree), labels_(max_degree + 1), pmap_(max_degree + 1) {
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
  const std::vector<RestrictedLabel>& labels(int n) const { return labels_.at(n); }

  void set_basis(int n, std::vector<RestrictedLabel> labels) {
    labels_.at(n) = std::move(labels);
    for (int m = 1; m + n <= N_; ++m) {
      table_[n][m].assign(dim(n) * dim(m), {});
      table_[m][n].assign(dim(m) * dim(n), {});
    }
    pmap_[n].assign(dim(n), {});
  }

  void set_bracket(int i, std::size_t a, int j, std::size_t b, FpVec v) {
    check(i, j);
    table_[j][i][b * dim(i) + a] = fpvec::scale(field_, field_.neg(1), v);
    table_[i][j][a * dim(j) + b] = std::move(v);
  }
  const FpVec& bracket_basis(int i, std::size_t a, int j, std::size_t b) const {
    check(i, j);
    return table_[i][j][a * dim(j) + b];
  }

  void set_pmap(int n, std::size_t a, FpVec v) {
    if (static_cast<long>(n) * p() > N_) throw InputError("p-map target degree exceeds N");
    pmap_.at(n).at(a) = std::move(v);
  }
  const FpVec& pmap_basis(int n, std::size_t a) const {
    if (static_cast<long>(n) * p() > N_) throw InputError("p-map target degree exceeds N");
    return pmap_.at(n).at(a);
  }

  FpVec bracket(const FpVec& x, int i, const FpVec& y, int j) const {
    if (i + j > N_) throw InputError("degree overflow: bracket lands in degree " + std::to_string(i + j));
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

  /// ad(x)^m (y) with x of degree i and y of degree j.
  FpVec ad_power(const FpVec& x, int i, FpVec y, int j, long m) const {
    for (long s = 0; s < m; ++s) {
      if (y.empty()) return y;
      y = bracket(x, i, y, j);
      j += i;
    }
    return y;
  }

  /// s_k(x, y): coefficient of t^(k-1) in ad(t x + y)^(p-1)(x); x, y of degree n.
  FpVec jacobson_sk(const FpVec& x, const FpVec& y, int n, int k) const {
    const int p = static_cast<int>(this->p());
    if (k < 1 || k > p - 1) throw InputError("jacobson_sk: k must lie in [1, p-1]");
    if (static_cast<long>(n) * p > N_) throw InputError("jacobson_sk: degree p*n exceeds N");
    return jacobson_all(x, y, n)[k - 1];
  }

  /// All s_1..s_{p-1} at once.
  std::vector<FpVec> jacobson_all(const FpVec& x, const FpVec& y, int n) const {
    const int p = static_cast<int>(this->p());
    // poly[d] = coefficient of t^d
    std::vector<FpVec> poly{x};
    int deg = n;
    for (int step = 0; step < p - 1; ++step) {
      std::vector<FpVec> next(poly.size() + 1);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        if (poly[d].empty()) continue;
        next[d] = fpvec::add(field_, next[d], bracket(y, n, poly[d], deg));
        next[d + 1] = fpvec::add(field_, next[d + 1], bracket(x, n, poly[d], deg));
      }
      poly = std::move(next);
      deg += n;
    }
    poly.resize(static_cast<std::size_t>(p - 1));
    return poly;
  }

  /// p-map of a homogeneous element of degree n, by repeated two-term rL2 in
  /// basis order, with rL1 for scalars.
  FpVec p_map(const FpVec& v, int n) const {
    if (static_cast<long>(n) * p() > N_) throw InputError("target degree exceeds N");
    FpVec acc, accp;
    for (auto it = v.rbegin(); it != v.rend(); ++it) {  // ascending basis order
      FpVec y{*it};
      FpVec yp = fpvec::scale(field_, it->second, pmap_basis(n, it->first));  // c^p = c in F_p
      if (acc.empty()) {
        acc = std::move(y);
        accp = std::move(yp);
        continue;
      }
      FpVec next = fpvec::add(field_, accp, yp);
      auto s = jacobson_all(acc, y, n);
      for (int k = 1; k < static_cast<int>(p()); ++k)
        next = fpvec::add(field_, next, s[k - 1], field_.inv(static_cast<std::uint32_t>(k)));
      accp = std::move(next);
      acc = fpvec::add(field_, acc, y);
    }
    return accp;
  }

 private:
  void check(int i, int j) const {
    if (i < 1 || j < 1 || i + j > N_) throw InputError("degree overflow: bracket degrees out of range");
  }

  PrimeField field_;
  int N_;
  std::vector<std::vector<RestrictedLabel>> labels_;
  std::vector<std::vector<std::vector<FpVec>>> table_;
  std::vector<std::vector<FpVec>> pmap_;
};

// ---------------------------------------------------------------------------
// Restrictification

namespace detail {

inline std::string power_label(const std::string& base, std::uint32_t p, int j) {
  if (j == 0) return base;
  long e = 1;
  for (int s = 0; s < j; ++s) e *= p;
  return base + "^[" + std::to_string(e) + "]";
}

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace detail

/// Position of label (i, b, j) within degree i*p^j of a restrictification:
/// labels are ordered by p-power exponent j, then base index.
inline std::size_t restrictified_position(const GradedLieAlgebraFp& L, int n, int i, std::size_t b) {
  std::size_t pos = 0;
  const long p = L.p();
  for (int j = 0;; ++j) {
    long pj = detail::ipow(p, j);
    if (pj > n) break;
    if (n % pj) continue;
    int base = static_cast<int>(n / pj);
    if (base == i) return pos + b;
    pos += L.dim(base);
  }
  throw std::logic_error("label not present in degree");
}

/// Canonical restrictification of a graded Lie algebra over F_p up to degree N:
/// degree n has basis b^[p^j] for b a basis element of degree i with i p^j = n.
inline RestrictedGLA restrictify(const GradedLieAlgebraFp& L, int N) {
  if (L.max_degree() < N) throw InputError("degree overflow: restrictify needs the Lie algebra up to degree N");
  const std::uint32_t p = L.p();
  const PrimeField& F = L.field();
  RestrictedGLA R(p, N);
  for (int n = 1; n <= N; ++n) {
    std::vector<RestrictedLabel> labels;
    for (int j = 0;; ++j) {
      long pj = detail::ipow(p, j);
      if (pj > n) break;
      if (n % pj) continue;
      int i = static_cast<int>(n / pj);
      for (std::size_t b = 0; b < L.dim(i); ++b)
        labels.push_back({i, b, j, detail::power_label(L.labels(i)[b], p, j)});
    }
    R.set_basis(n, std::move(labels));
  }

  // ad(e)^m (x) inside L, for e a basis element.
  auto ad_L = [&](int ie, std::size_t e, FpVec x, int ix, long m) {
    for (long s = 0; s < m && !x.empty(); ++s) {
      x = L.bracket(fpvec::unit(static_cast<std::uint32_t>(e)), ie, x, ix);
      ix += ie;
    }
    return x;
  };
  // Vector in L (degree n) -> vector in R: j = 0 labels come first with the same index.
  auto embed = [](const FpVec& x) { return x; };

  for (int n1 = 1; n1 <= N; ++n1)
    for (int n2 = n1; n1 + n2 <= N; ++n2)
      for (std::size_t a = 0; a < R.dim(n1); ++a)
        for (std::size_t b = (n1 == n2 ? a + 1 : 0); b < R.dim(n2); ++b) {
          const auto& u = R.labels(n1)[a];
          const auto& v = R.labels(n2)[b];
          FpVec out;
          if (u.power == 0 && v.power == 0) {
            out = L.bracket_basis(u.base_degree, u.base_index, v.base_degree, v.base_index);
          } else {
            // [b, c^[p^k]] = -ad(c)^(p^k)(b) when k > 0, else the L bracket.
            FpVec first;
            int first_deg = u.base_degree + n2;
            if (v.power == 0) {
              first = L.bracket_basis(u.base_degree, u.base_index, v.base_degree, v.base_index);
            } else {
              first = ad_L(v.base_degree, v.base_index, fpvec::unit(static_cast<std::uint32_t>(u.base_index)),
                           u.base_degree, detail::ipow(p, v.power));
              first = fpvec::scale(F, F.neg(1), first);
            }
            // [b^[p^j], w] = ad(b)^(p^j)(w): p^j - 1 further applications.
            out = ad_L(u.base_degree, u.base_index, first, first_deg, detail::ipow(p, u.power) - 1);
          }
          R.set_bracket(n1, a, n2, b, embed(out));
        }

  for (int n = 1; static_cast<long>(n) * p <= N; ++n)
    for (std::size_t a = 0; a < R.dim(n); ++a) {
      const auto& u = R.labels(n)[a];
      std::size_t target = restrictified_position(L, n * static_cast<int>(p), u.base_degree, u.base_index);
      R.set_pmap(n, a, fpvec::unit(static_cast<std::uint32_t>(target)));
    }
  return R;
}

/// Single bracket of labels, following the rL3 recursion (same as the table).
inline FpVec bracket_restricted(const RestrictedGLA& R, int n1, std::size_t a, int n2, std::size_t b) {
  return R.bracket_basis(n1, a, n2, b);
}

inline FpVec jacobson_sk(const RestrictedGLA& R, const FpVec& x, const FpVec& y, int n, int k) {
  return R.jacobson_sk(x, y, n, k);
}

inline FpVec p_map_element(const RestrictedGLA& R, const FpVec& v, int n) { return R.p_map(v, n); }

// ---------------------------------------------------------------------------
// Restricted ideals and quotients

/// Homogeneous element of a restricted algebra.
struct GradedElement {
  int degree;
  FpVec v;
};

/// Quotient of R by the restricted ideal generated by `generators`, up to
/// degree N. Ideal spans are closed degree by degree under brackets with
/// basis elements and under the p-map of span basis rows.
inline RestrictedGLA restricted_ideal_quotient(const RestrictedGLA& R, const std::vector<GradedElement>& generators,
                                               int N) {
  if (N > R.max_degree()) throw InputError("degree overflow: quotient degree exceeds the algebra");
  const PrimeField& F = R.field();
  std::vector<SparseEchelon<PrimeField>> spans;
  spans.emplace_back(F, 0);
  for (int n = 1; n <= N; ++n) {
    SparseEchelon<PrimeField> span(F, R.dim(n));
    for (auto& g : generators)
      if (g.degree == n && !g.v.empty()) span.insert(g.v);
    for (int d = 1; d < n; ++d)
      for (std::size_t e = 0; e < R.dim(d); ++e)
        for (const auto& row : spans[n - d].rows()) {
          FpVec b = R.bracket(fpvec::unit(static_cast<std::uint32_t>(e)), d, row, n - d);
          if (!b.empty()) span.insert(std::move(b));
        }
    if (n % R.p() == 0)
      for (const auto& row : spans[n / R.p()].rows()) {
        FpVec q = R.p_map(row, n / static_cast<int>(R.p()));
        if (!q.empty()) span.insert(std::move(q));
      }
    span.reduce_fully();
    spans.push_back(std::move(span));
  }

  RestrictedGLA Q(R.p(), N);
  std::vector<std::vector<std::int64_t>> position(N + 1);
  std::vector<std::vector<std::uint32_t>> kept(N + 1);
  for (int n = 1; n <= N; ++n) {
    kept[n] = spans[n].free_columns();
    position[n].assign(R.dim(n), -1);
    std::vector<RestrictedLabel> labels;
    for (std::size_t k = 0; k < kept[n].size(); ++k) {
      position[n][kept[n][k]] = static_cast<std::int64_t>(k);
      labels.push_back(R.labels(n)[kept[n][k]]);
    }
    Q.set_basis(n, std::move(labels));
  }
  auto project = [&](int n, const FpVec& x) {
    std::map<std::uint32_t, std::uint32_t, std::greater<>> acc;
    for (auto& [i, c] : x) {
      std::int64_t pos = position[n][i];
      if (pos >= 0) {
        acc[static_cast<std::uint32_t>(pos)] = F.add(acc[static_cast<std::uint32_t>(pos)], c);
        continue;
      }
      const auto& row = spans[n].pivot_row(i);
      for (std::size_t k = 1; k < row.size(); ++k) {
        auto to = static_cast<std::uint32_t>(position[n][row[k].first]);
        acc[to] = F.sub(acc[to], F.mul(c, row[k].second));
      }
    }
    FpVec out;
    for (auto& [k, c] : acc)
      if (c) out.emplace_back(k, c);
    return out;
  };
  for (int i = 1; i <= N; ++i)
    for (int j = i; i + j <= N; ++j)
      for (std::size_t a = 0; a < Q.dim(i); ++a)
        for (std::size_t b = (i == j ? a + 1 : 0); b < Q.dim(j); ++b)
          Q.set_bracket(i, a, j, b, project(i + j, R.bracket_basis(i, kept[i][a], j, kept[j][b])));
  for (int n = 1; static_cast<long>(n) * R.p() <= N; ++n)
    for (std::size_t a = 0; a < Q.dim(n); ++a)
      Q.set_pmap(n, a, project(n * static_cast<int>(R.p()), R.pmap_basis(n, kept[n][a])));
  return Q;
}

/// Generators of the restricted ideal spanned by all x^[p]: the p-map images
/// of basis elements together with the symmetrized (p-1)-Engel words
/// sum over orderings of ad(x_1)...ad(x_{p-1})(y), x_i and y basis elements.
inline std::vector<GradedElement> zero_pmap_generators(const RestrictedGLA& R) {
  std::vector<GradedElement> gens;
  const int N = R.max_degree();
  const int p = static_cast<int>(R.p());
  for (int n = 1; n <= N; ++n)
    for (std::size_t a = 0; a < R.dim(n); ++a)
      if (R.labels(n)[a].power >= 1) gens.push_back({n, fpvec::unit(static_cast<std::uint32_t>(a))});

  // Basis elements flattened as (degree, index).
  std::vector<std::pair<int, std::size_t>> basis;
  for (int n = 1; n <= N; ++n)
    for (std::size_t a = 0; a < R.dim(n); ++a) basis.emplace_back(n, a);
  const int len = p - 1;
  std::vector<std::size_t> multiset(len, 0);
  // Enumerate non-decreasing index sequences of length p-1.
  std::function<void(int, std::size_t, int)> rec = [&](int pos, std::size_t from, int deg) {
    if (pos == len) {
      for (auto [yd, yi] : basis) {
        if (deg + yd > N) continue;
        std::vector<std::size_t> perm(multiset);
        std::map<std::uint32_t, std::uint32_t, std::greater<>> acc;
        std::sort(perm.begin(), perm.end());
        do {
          FpVec cur = fpvec::unit(static_cast<std::uint32_t>(yi));
          int cd = yd;
          for (int k = len - 1; k >= 0 && !cur.empty(); --k) {
            auto [xd, xi] = basis[perm[k]];
            cur = R.bracket(fpvec::unit(static_cast<std::uint32_t>(xi)), xd, cur, cd);
            cd += xd;
          }
          for (auto& [i, c] : cur) acc[i] = R.field().add(acc[i], c);
        } while (std::next_permutation(perm.begin(), perm.end()));
        FpVec v;
        for (auto& [i, c] : acc)
          if (c) v.emplace_back(i, c);
        if (!v.empty()) gens.push_back({deg + yd, std::move(v)});
      }
      return;
    }
    for (std::size_t k = from; k < basis.size(); ++k) {
      int d = deg + basis[k].first;
      if (d + 1 > N) break;  // basis sorted by degree; room for y needed
      multiset[pos] = k;
      rec(pos + 1, k, d);
    }
  };
  rec(0, 0, 0);
  return gens;
}

/// Basis elements of the underlying Lie algebra in degrees >= 2.
inline std::vector<GradedElement> abelianization_generators(const RestrictedGLA& R) {
  std::vector<GradedElement> gens;
  for (int n = 2; n <= R.max_degree(); ++n)
    for (std::size_t a = 0; a < R.dim(n); ++a)
      if (R.labels(n)[a].power == 0 && R.labels(n)[a].base_degree >= 2)
        gens.push_back({n, fpvec::unit(static_cast<std::uint32_t>(a))});
  return gens;
}

enum class QuotientMode { Plain, ZeroPMap, Abelianize };

inline RestrictedGLA restricted_quotient_mode(const RestrictedGLA& R, QuotientMode mode) {
  switch (mode) {
    case QuotientMode::Plain: return R;
    case QuotientMode::ZeroPMap: return restricted_ideal_quotient(R, zero_pmap_generators(R), R.max_degree());
    case QuotientMode::Abelianize:
      return restricted_ideal_quotient(R, abelianization_generators(R), R.max_degree());
  }
  throw std::logic_error("bad quotient mode");
}

// ---------------------------------------------------------------------------
// Restricted presentations

/// Restricted relators over an alphabet; `P(...)` denotes the p-map.
struct RestrictedPresentation {
  Alphabet alphabet;
  std::vector<ExprPtr> relators;
  std::vector<std::string> relator_text;

  static RestrictedPresentation parse(Alphabet a, const std::vector<std::string>& rels) {
    RestrictedPresentation r;
    r.alphabet = std::move(a);
    r.alphabet.validate();
    for (auto& s : rels) {
      r.relators.push_back(parse_lie_expression(s));
      r.relator_text.push_back(s);
    }
    return r;
  }
};

/// Evaluates an expression in the restrictification of the free Lie algebra;
/// result keyed by degree (inhomogeneous expressions have several parts).
/// Generators map to the degree-w label of the corresponding Lyndon letter.
inline std::map<int, FpVec> evaluate_restricted(const RestrictedGLA& R, const GradedLieAlgebraFp& L, const Expr& e) {
  const PrimeField& F = R.field();
  const auto* pres = L.presentation();
  if (!pres) throw InputError("evaluation needs a Lie algebra built from a presentation");
  std::function<std::map<int, FpVec>(const Expr&)> eval = [&](const Expr& x) -> std::map<int, FpVec> {
    switch (x.kind) {
      case Expr::Kind::Generator: {
        int g = pres->alphabet.index_of(x.name);
        if (g < 0) throw InputError("unknown generator '" + x.name + "'");
        int w = pres->alphabet.weights[g];
        if (w > R.max_degree()) throw InputError("degree overflow");
        LieCoords c{{static_cast<std::uint32_t>(pres->free->index_of(Word::letter(g))), 1}};
        return {{w, L.project(w, c)}};
      }
      case Expr::Kind::Bracket: {
        auto l = eval(*x.left), r = eval(*x.right);
        std::map<int, FpVec> out;
        for (auto& [dl, vl] : l)
          for (auto& [dr, vr] : r) {
            if (dl + dr > R.max_degree()) throw InputError("degree overflow");
            out[dl + dr] = fpvec::add(F, out[dl + dr], R.bracket(vl, dl, vr, dr));
          }
        return out;
      }
      case Expr::Kind::Sum: {
        std::map<int, FpVec> out;
        for (auto& [c, t] : x.terms)
          for (auto& [d, v] : eval(*t)) out[d] = fpvec::add(F, out[d], v, F.from_int(c));
        return out;
      }
      case Expr::Kind::PMap: {
        auto inner = eval(*x.left);
        if (inner.size() > 1) throw InputError("P(...) of an inhomogeneous element");
        std::map<int, FpVec> out;
        for (auto& [d, v] : inner) {
          if (static_cast<long>(d) * R.p() > R.max_degree()) throw InputError("degree overflow");
          out[d * static_cast<int>(R.p())] = R.p_map(v, d);
        }
        return out;
      }
      case Expr::Kind::Integer: throw InputError("bare integer is not a Lie element");
    }
    throw std::logic_error("bad expression kind");
  };
  return eval(e);
}

/// Quotient of restrictify(free F_p-Lie algebra) by restricted relators.
/// Homogeneous relators are imposed as given; an inhomogeneous relator is
/// imposed through its lowest-degree component (its initial form).
inline RestrictedGLA restricted_presentation_quotient(const RestrictedPresentation& rp, std::uint32_t p, int N) {
  GradedLieAlgebraFp L = quotient_fp(LiePresentation{rp.alphabet, {}, {}}, p, N);
  RestrictedGLA R = restrictify(L, N);
  std::vector<GradedElement> gens;
  for (auto& rel : rp.relators) {
    auto parts = evaluate_restricted(R, L, *rel);
    for (auto& [d, v] : parts) {
      if (v.empty()) continue;
      gens.push_back({d, v});
      break;  // lowest nonzero degree only
    }
  }
  return restricted_ideal_quotient(R, gens, N);
}

// ---------------------------------------------------------------------------
// Predictions

/// dim_n of the restrictification of L: sum over i p^j = n of dim_i(L).
inline std::vector<std::size_t> restrictified_dims(const std::vector<std::size_t>& lie_dims, std::uint32_t p) {
  const int N = static_cast<int>(lie_dims.size());
  std::vector<std::size_t> out(N, 0);
  for (int i = 1; i <= N; ++i)
    for (long n = i; n <= N; n *= p) out[n - 1] += lie_dims[i - 1];
  return out;
}

/// Predicted dimensions of the Zassenhaus restricted Lie algebra of a group
/// whose Magnus Lie algebra is presented by `pres`.
inline std::vector<std::size_t> predicted_zassenhaus_dims(const LiePresentation& pres, std::uint32_t p, int N) {
  return restrictified_dims(quotient_fp(pres, p, N).dims(), p);
}

}  // namespace grlie
