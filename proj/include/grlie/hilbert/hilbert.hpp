#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "grlie/error.hpp"
#include "grlie/exactalg/power_series.hpp"

namespace grlie {

/// Graded dimensions d_1..d_N (index 0 holds d_1).
struct DimensionTable {
  std::vector<BigInt> d;

  DimensionTable() = default;
  explicit DimensionTable(std::vector<BigInt> v) : d(std::move(v)) { validate(); }
  template <class Int>
  static DimensionTable from(const std::vector<Int>& v) {
    DimensionTable t;
    for (auto& x : v) t.d.emplace_back(x);
    t.validate();
    return t;
  }

  std::size_t max_degree() const { return d.size(); }
  /// d_n, zero beyond the table.
  BigInt at(std::size_t n) const { return n >= 1 && n <= d.size() ? d[n - 1] : BigInt(0); }
  DimensionTable truncated(std::size_t N) const {
    DimensionTable t;
    for (std::size_t n = 1; n <= N; ++n) t.d.push_back(at(n));
    return t;
  }
  void validate() const {
    for (auto& x : d)
      if (x < 0) throw InputError("dimension tables must be non-negative");
  }
  std::vector<long long> to_ll() const {
    std::vector<long long> out;
    for (auto& x : d) out.push_back(static_cast<long long>(x));
    return out;
  }
  bool operator==(const DimensionTable&) const = default;
};

/// Hilbert series of the enveloping algebra: prod_n (1 - t^n)^(-d_n) mod t^(N+1).
inline PowerSeriesZ pbw_series(const DimensionTable& dims, std::size_t N) {
  PowerSeriesZ s = PowerSeriesZ::one(N);
  for (std::size_t n = 1; n <= N; ++n) {
    BigInt dn = dims.at(n);
    if (dn == 0) continue;
    PowerSeriesZ f = PowerSeriesZ::one(N);
    f[n] = -1;
    s = s * f.pow(-static_cast<long long>(dn));
  }
  return s;
}

/// Exact inverse of pbw_series: solves d_n degree by degree.
inline DimensionTable pbw_invert(const PowerSeriesZ& s) {
  if (s[0] != 1) throw InputError("not a PBW series: constant term must be 1");
  const std::size_t N = s.order();
  DimensionTable out;
  PowerSeriesZ acc = PowerSeriesZ::one(N);
  for (std::size_t n = 1; n <= N; ++n) {
    // (1 - t^n)^(-d) contributes d t^n in degree n
    BigInt dn = s[n] - acc[n];
    if (dn < 0) throw InputError("not a PBW series (negative d_" + std::to_string(n) + ")");
    out.d.push_back(dn);
    if (dn != 0) {
      PowerSeriesZ f = PowerSeriesZ::one(N);
      f[n] = -1;
      acc = acc * f.pow(-static_cast<long long>(dn));
    }
  }
  return out;
}

/// prod_n (1 + t^n + ... + t^((p-1)n))^(d_n) mod t^(N+1).
inline PowerSeriesZ jennings_series(const DimensionTable& dims, std::uint32_t p, std::size_t N) {
  if (p < 2) throw InputError("jennings_series needs p >= 2");
  PowerSeriesZ s = PowerSeriesZ::one(N);
  for (std::size_t n = 1; n <= N; ++n) {
    BigInt dn = dims.at(n);
    if (dn == 0) continue;
    PowerSeriesZ f(N);
    for (std::size_t k = 0; k < p && k * n <= N; ++k) f[k * n] = 1;
    s = s * f.pow(static_cast<long long>(dn));
  }
  return s;
}

/// Untruncated Jennings polynomial for a finite table (degree sum (p-1) n d_n).
inline PowerSeriesZ jennings_polynomial(const DimensionTable& dims, std::uint32_t p) {
  std::size_t top = 0;
  for (std::size_t n = 1; n <= dims.max_degree(); ++n) top += static_cast<std::size_t>(dims.at(n)) * n * (p - 1);
  return jennings_series(dims, p, top);
}

inline DimensionTable jennings_invert(const PowerSeriesZ& s, std::uint32_t p) {
  if (s[0] != 1) throw InputError("not a Jennings series: constant term must be 1");
  const std::size_t N = s.order();
  DimensionTable out;
  PowerSeriesZ acc = PowerSeriesZ::one(N);
  for (std::size_t n = 1; n <= N; ++n) {
    BigInt dn = s[n] - acc[n];
    if (dn < 0) throw InputError("not a Jennings series (negative d_" + std::to_string(n) + ")");
    out.d.push_back(dn);
    if (dn != 0) {
      PowerSeriesZ f(N);
      for (std::size_t k = 0; k < p && k * n <= N; ++k) f[k * n] = 1;
      acc = acc * f.pow(static_cast<long long>(dn));
    }
  }
  return out;
}

/// Graded dimensions of the coproduct: H = 1/(1/H_A + 1/H_B - 1).
inline DimensionTable free_product_dims(const DimensionTable& a, const DimensionTable& b, std::size_t N) {
  PowerSeriesZ ha = pbw_series(a, N), hb = pbw_series(b, N);
  PowerSeriesZ h = (ha.inverse() + hb.inverse() - PowerSeriesZ::one(N)).inverse();
  return pbw_invert(h);
}

}  // namespace grlie
