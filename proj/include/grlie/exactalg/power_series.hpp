#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "grlie/exactalg/rings.hpp"

namespace grlie {

/// Integer power series truncated after t^order. Mixed-order arithmetic
/// truncates to the smaller order.
class PowerSeriesZ {
 public:
  explicit PowerSeriesZ(std::size_t order) : c_(order + 1) {}
  PowerSeriesZ(std::size_t order, std::vector<BigInt> coeffs) : c_(order + 1) {
    for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) c_[i] = std::move(coeffs[i]);
  }

  static PowerSeriesZ one(std::size_t order) {
    PowerSeriesZ s(order);
    s.c_[0] = 1;
    return s;
  }
  static PowerSeriesZ from_ints(std::size_t order, const std::vector<long long>& coeffs) {
    PowerSeriesZ s(order);
    for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) s.c_[i] = coeffs[i];
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const BigInt& operator[](std::size_t i) const { return c_[i]; }
  BigInt& operator[](std::size_t i) { return c_[i]; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  PowerSeriesZ truncated(std::size_t order) const {
    PowerSeriesZ s(order);
    for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) s.c_[i] = c_[i];
    return s;
  }

  friend PowerSeriesZ operator+(const PowerSeriesZ& a, const PowerSeriesZ& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeriesZ s(n);
    for (std::size_t i = 0; i <= n; ++i) s.c_[i] = a.c_[i] + b.c_[i];
    return s;
  }
  friend PowerSeriesZ operator-(const PowerSeriesZ& a, const PowerSeriesZ& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeriesZ s(n);
    for (std::size_t i = 0; i <= n; ++i) s.c_[i] = a.c_[i] - b.c_[i];
    return s;
  }
  friend PowerSeriesZ operator*(const PowerSeriesZ& a, const PowerSeriesZ& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeriesZ s(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= n; ++j) s.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return s;
  }

  /// 1/b; requires b_0 = +-1.
  PowerSeriesZ inverse() const {
    const BigInt& c0 = c_[0];
    if (c0 != 1 && c0 != -1) throw std::domain_error("series inverse needs constant term +-1");
    PowerSeriesZ s(order());
    s.c_[0] = c0;  // 1/c0 == c0 for units
    for (std::size_t n = 1; n <= order(); ++n) {
      BigInt acc = 0;
      for (std::size_t k = 1; k <= n; ++k) acc += c_[k] * s.c_[n - k];
      s.c_[n] = -acc * c0;
    }
    return s;
  }

  friend PowerSeriesZ operator/(const PowerSeriesZ& a, const PowerSeriesZ& b) {
    return a * b.inverse();
  }

  /// Integer power; negative exponents need a unit constant term.
  PowerSeriesZ pow(long long e) const {
    PowerSeriesZ base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    PowerSeriesZ r = one(order());
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  /// t -> t^k.
  PowerSeriesZ substitute_power(std::size_t k) const {
    if (k == 0) throw InputError("substitution t -> t^0 is not supported");
    PowerSeriesZ s(order());
    for (std::size_t i = 0; i * k <= order(); ++i) s.c_[i * k] = c_[i];
    return s;
  }

  bool operator==(const PowerSeriesZ& o) const { return c_ == o.c_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) out += ' ';
      out += c_[i].str();
    }
    return out;
  }

 private:
  std::vector<BigInt> c_;
};

}  // namespace grlie
