#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "grlie/error.hpp"

namespace grlie {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
}

/// The prime field F_p with residues stored as uint32 in [0, p).
struct PrimeField {
  using value_type = std::uint32_t;

  std::uint32_t p;

  explicit PrimeField(std::uint32_t prime) : p(prime) { require_prime(prime); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<std::uint64_t>(a) * b) % p);
  }
  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p - 2);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a != 0; }
  std::int64_t to_int(value_type a) const { return a; }
  bool operator==(const PrimeField& o) const { return p == o.p; }
};

/// Overflow-checked int64 arithmetic.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 subtraction overflow");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

}  // namespace checked

/// Integers with either overflow-checked int64 or arbitrary-precision storage.
template <class T>
struct Integers {
  using value_type = T;

  value_type zero() const { return T(0); }
  value_type one() const { return T(1); }
  value_type from_int(std::int64_t x) const { return T(x); }
  value_type add(const T& a, const T& b) const {
    if constexpr (std::is_same_v<T, std::int64_t>) return checked::add(a, b);
    else return a + b;
  }
  value_type sub(const T& a, const T& b) const {
    if constexpr (std::is_same_v<T, std::int64_t>) return checked::sub(a, b);
    else return a - b;
  }
  value_type mul(const T& a, const T& b) const {
    if constexpr (std::is_same_v<T, std::int64_t>) return checked::mul(a, b);
    else return a * b;
  }
  value_type neg(const T& a) const { return sub(T(0), a); }
  bool is_zero(const T& a) const { return a == 0; }
  bool is_unit(const T& a) const { return a == 1 || a == -1; }
  bool operator==(const Integers&) const { return true; }
};

using Int64Ring = Integers<std::int64_t>;
using BigIntRing = Integers<BigInt>;

template <class R>
inline constexpr bool is_field_v = std::is_same_v<R, PrimeField>;

}  // namespace grlie
