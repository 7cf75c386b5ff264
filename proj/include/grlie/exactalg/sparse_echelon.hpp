#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "grlie/exactalg/rings.hpp"
#include "grlie/exactalg/smith.hpp"

namespace grlie {

/// Sparse vector: (index, value) pairs with strictly decreasing indices.
///
/// Decreasing order puts the leading entry first; elimination pivots on the
/// largest index, so the surviving non-pivot indices are the smallest ones
/// that complete the row space.
template <class T>
using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

template <class Ring>
SparseRow<typename Ring::value_type> sparse_axpy(const Ring& ring,
                                                 const SparseRow<typename Ring::value_type>& x,
                                                 const typename Ring::value_type& f,
                                                 const SparseRow<typename Ring::value_type>& y) {
  // x + f*y
  SparseRow<typename Ring::value_type> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first > y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first > x[i].first) {
      auto v = ring.mul(f, y[j].second);
      if (!ring.is_zero(v)) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      auto v = ring.add(x[i].second, ring.mul(f, y[j].second));
      if (!ring.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class Ring>
SparseRow<typename Ring::value_type> sparse_scale(const Ring& ring, const typename Ring::value_type& f,
                                                  const SparseRow<typename Ring::value_type>& x) {
  SparseRow<typename Ring::value_type> out;
  out.reserve(x.size());
  for (const auto& [c, v] : x) {
    auto w = ring.mul(f, v);
    if (!ring.is_zero(w)) out.emplace_back(c, std::move(w));
  }
  return out;
}

namespace detail {

// Floor division and extended gcd for the integer rings.
template <class T>
T floor_div(const T& a, const T& b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

template <class T>
T ext_gcd(const T& a, const T& b, T& u, T& v) {
  // u*a + v*b = g >= 0
  T old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    T q = old_r / r;
    T tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  u = old_s;
  v = old_t;
  return old_r;
}

}  // namespace detail

/// Incremental sparse echelon basis over F_p or Z.
///
/// Over F_p pivots are normalized to 1. Over Z the rows form a lattice basis
/// (Hermite-style gcd merges when a leading entry does not divide), with
/// positive leading entries.
template <class Ring>
class SparseEchelon {
 public:
  using T = typename Ring::value_type;
  using Row = SparseRow<T>;

  SparseEchelon(Ring ring, std::size_t cols)
      : ring_(std::move(ring)), cols_(cols), pivot_of_col_(cols, kNone) {}

  const Ring& ring() const { return ring_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Inserts a row; returns true if the span (lattice) grew.
  bool insert(Row r) {
    std::size_t i = 0;
    while (i < r.size()) {
      const std::uint32_t c = r[i].first;
      const std::size_t pr = pivot_of_col_[c];
      if (pr == kNone) {
        if (i == 0) {
          add_pivot(std::move(r));
          return true;
        }
        ++i;
        continue;
      }
      const Row& piv = rows_[pr];
      const T& a = piv.front().second;
      const T& b = r[i].second;
      if constexpr (is_field_v<Ring>) {
        r = sparse_axpy(ring_, r, ring_.neg(b), piv);  // pivot is 1
      } else {
        if (b % a == 0) {
          r = sparse_axpy(ring_, r, ring_.neg(T(b / a)), piv);
        } else if (i > 0) {
          T q = detail::floor_div(b, a);
          r = sparse_axpy(ring_, r, ring_.neg(q), piv);
          ++i;
        } else {
          T u, v;
          T g = detail::ext_gcd(a, b, u, v);
          Row new_piv = sparse_axpy(ring_, sparse_scale(ring_, u, piv), v, r);
          Row rest = sparse_axpy(ring_, sparse_scale(ring_, T(b / g), piv), ring_.neg(T(a / g)), r);
          rows_[pr] = std::move(new_piv);
          r = std::move(rest);
        }
      }
      // Entries before i are untouched by the merge; r[i] either vanished or
      // (integer remainder) was skipped.
    }
    return false;
  }

  bool contains(Row r) const {
    while (!r.empty()) {
      const std::size_t pr = pivot_of_col_[r.front().first];
      if (pr == kNone) return false;
      const Row& piv = rows_[pr];
      const T& a = piv.front().second;
      const T& b = r.front().second;
      if constexpr (is_field_v<Ring>) {
        r = sparse_axpy(ring_, r, ring_.neg(b), piv);
      } else {
        if (b % a != 0) return false;
        r = sparse_axpy(ring_, r, ring_.neg(T(b / a)), piv);
      }
    }
    return true;
  }

  /// Reduces entries at pivot columns of every row below each leading entry
  /// (row-reduced echelon form; over Z with remainders in [0, pivot)).
  void reduce_fully() {
    std::vector<std::uint32_t> order;
    order.reserve(rows_.size());
    for (const auto& r : rows_) order.push_back(r.front().first);
    std::sort(order.begin(), order.end());
    for (std::uint32_t c : order) {
      Row& r = rows_[pivot_of_col_[c]];
      std::size_t i = 1;
      while (i < r.size()) {
        const std::size_t pr = pivot_of_col_[r[i].first];
        if (pr == kNone) {
          ++i;
          continue;
        }
        const Row& piv = rows_[pr];
        const T& a = piv.front().second;
        T q;
        if constexpr (is_field_v<Ring>) q = r[i].second;
        else q = detail::floor_div(r[i].second, a);
        if (ring_.is_zero(q)) {
          ++i;
          continue;
        }
        r = sparse_axpy(ring_, r, ring_.neg(q), piv);
        if (i < r.size() && r[i].first == piv.front().first) ++i;
      }
    }
  }

  bool is_pivot(std::uint32_t c) const { return pivot_of_col_[c] != kNone; }
  const Row& pivot_row(std::uint32_t c) const { return rows_[pivot_of_col_[c]]; }
  const std::vector<Row>& rows() const { return rows_; }

  /// Columns that are not pivots, ascending.
  std::vector<std::uint32_t> free_columns() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < cols_; ++c)
      if (pivot_of_col_[c] == kNone) out.push_back(c);
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void add_pivot(Row r) {
    if constexpr (is_field_v<Ring>) {
      T inv = ring_.inv(r.front().second);
      if (inv != 1) r = sparse_scale(ring_, inv, r);
    } else {
      if (r.front().second < 0) r = sparse_scale(ring_, T(-1), r);
    }
    pivot_of_col_[r.front().first] = rows_.size();
    rows_.push_back(std::move(r));
  }

  Ring ring_;
  std::size_t cols_;
  std::vector<std::size_t> pivot_of_col_;
  std::vector<Row> rows_;
};

/// Free rank and torsion invariant factors (> 1) of Z^cols / lattice.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool operator==(const AbelianInvariants&) const = default;
};

/// Cokernel of a lattice held in a SparseEchelon over Z. Rows with unit
/// pivots split off directly; the remaining block goes through dense SNF.
template <class Ring>
AbelianInvariants lattice_cokernel(SparseEchelon<Ring> echelon) {
  static_assert(!is_field_v<Ring>);
  echelon.reduce_fully();
  const auto& ring = echelon.ring();
  std::vector<std::uint32_t> unit_cols;
  std::vector<const typename SparseEchelon<Ring>::Row*> hard;
  for (const auto& r : echelon.rows()) {
    if (ring.is_unit(r.front().second)) unit_cols.push_back(r.front().first);
    else hard.push_back(&r);
  }
  std::vector<bool> is_unit_col(echelon.cols(), false);
  for (auto c : unit_cols) is_unit_col[c] = true;

  // Clear unit-pivot columns from the hard rows, then SNF on what remains.
  std::vector<typename SparseEchelon<Ring>::Row> block;
  for (const auto* hp : hard) {
    auto r = *hp;
    std::size_t i = 0;
    while (i < r.size()) {
      if (!is_unit_col[r[i].first]) {
        ++i;
        continue;
      }
      const auto& piv = echelon.pivot_row(r[i].first);
      r = sparse_axpy(ring, r, ring.mul(ring.neg(r[i].second), piv.front().second), piv);
    }
    block.push_back(std::move(r));
  }
  std::vector<std::uint32_t> cols;
  for (std::uint32_t c = 0; c < echelon.cols(); ++c)
    if (!is_unit_col[c]) cols.push_back(c);
  AbelianInvariants out;
  if (block.empty()) {
    out.free_rank = cols.size();
    return out;
  }
  std::vector<std::uint32_t> pos(echelon.cols(), 0);
  for (std::uint32_t k = 0; k < cols.size(); ++k) pos[cols[k]] = k;
  MatrixZ m(block.size(), cols.size());
  for (std::size_t r = 0; r < block.size(); ++r)
    for (const auto& [c, v] : block[r]) m.at(r, pos[c]) = BigInt(v);
  auto diag = smith_normal_form(std::move(m));
  out.free_rank = cols.size() - diag.size();
  for (auto& d : diag)
    if (d != 1) out.torsion.push_back(d);
  return out;
}

}  // namespace grlie
