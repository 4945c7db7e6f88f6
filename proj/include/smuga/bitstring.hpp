#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smuga/error.hpp"

namespace smuga {

/// Fixed-length string of bits packed into 64-bit words.
///
/// Bit 0 is the leftmost character of the textual form, so "1000" has only
/// bit 0 set. Ordering is lexicographic over that textual form.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length);

  /// Parses a string of '0' and '1' characters.
  static BitString fromString(std::string_view bits);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void flipAll() noexcept;

  /// Number of set bits.
  std::size_t count() const noexcept;

  /// Bits [first, first + length), no wrap.
  BitString slice(std::size_t first, std::size_t length) const;
  /// Concatenation `*this` followed by `tail`.
  BitString concat(const BitString& tail) const;

  std::string toString() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept;

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Host chromosome. Length is fixed by the problem.
using Genotype = BitString;

struct BitStringHash {
  std::size_t operator()(const BitString& b) const noexcept { return b.hash(); }
};

}  // namespace smuga

template <>
struct std::hash<smuga::BitString> {
  std::size_t operator()(const smuga::BitString& b) const noexcept { return b.hash(); }
};
