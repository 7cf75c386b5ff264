#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grlie/error.hpp"

namespace grlie {

/// Word over an alphabet of at most 31 letters, at most 12 letters long.
///
/// Letters are packed left-aligned, 5 bits each, as (letter + 1). Comparing
/// codes numerically is lexicographic order with a proper prefix first.
class Word {
 public:
  static constexpr int kMaxLength = 12;
  static constexpr int kMaxLetters = 31;

  Word() = default;

  static Word letter(int l) {
    if (l < 0 || l >= kMaxLetters) throw InputError("letter index out of range");
    Word w;
    w.code_ = static_cast<std::uint64_t>(l + 1) << shift(0);
    w.len_ = 1;
    return w;
  }

  static Word from_letters(const std::vector<int>& letters) {
    Word w;
    for (int l : letters) w = w * letter(l);
    return w;
  }

  int length() const { return len_; }
  bool empty() const { return len_ == 0; }
  std::uint64_t code() const { return code_; }

  int operator[](int i) const { return static_cast<int>((code_ >> shift(i)) & 31u) - 1; }

  /// Concatenation.
  friend Word operator*(const Word& a, const Word& b) {
    if (a.len_ + b.len_ > kMaxLength)
      throw InputError("word longer than " + std::to_string(kMaxLength) + " letters");
    Word w;
    w.code_ = a.code_ | (b.len_ ? (b.code_ >> (5 * a.len_)) : 0);
    w.len_ = static_cast<std::uint8_t>(a.len_ + b.len_);
    return w;
  }

  Word prefix(int n) const {
    Word w;
    if (n <= 0) return w;
    w.len_ = static_cast<std::uint8_t>(n);
    w.code_ = n >= kMaxLength ? code_ : code_ & ~((std::uint64_t{1} << shift(n - 1)) - 1);
    return w;
  }
  Word suffix_from(int i) const {
    Word w;
    if (i >= len_) return w;
    w.len_ = static_cast<std::uint8_t>(len_ - i);
    w.code_ = code_ << (5 * i);
    // clear the 4 spare low bits so equal words compare equal
    w.code_ &= ~std::uint64_t{0xF};
    return w;
  }

  Word rotation(int i) const { return suffix_from(i) * prefix(i); }

  std::vector<int> letters() const {
    std::vector<int> out(len_);
    for (int i = 0; i < len_; ++i) out[i] = (*this)[i];
    return out;
  }

  auto operator<=>(const Word& o) const { return code_ <=> o.code_; }
  bool operator==(const Word& o) const { return code_ == o.code_; }

 private:
  static int shift(int i) { return 5 * (kMaxLength - 1 - i) + 4; }

  std::uint64_t code_ = 0;
  std::uint8_t len_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return std::hash<std::uint64_t>{}(w.code()); }
};

}  // namespace grlie
