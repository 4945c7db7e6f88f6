#include "smuga/bitstring.hpp"

#include <algorithm>
#include <bit>

namespace smuga {

namespace {

constexpr std::size_t wordCount(std::size_t bits) { return (bits + 63) / 64; }

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

BitString::BitString(std::size_t length) : length_(length), words_(wordCount(length), 0) {}

BitString BitString::fromString(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw StructuralError("bit string may only contain '0' and '1': " + std::string(bits));
    }
  }
  return out;
}

void BitString::flipAll() noexcept {
  for (auto& w : words_) w = ~w;
  if (const std::size_t tail = length_ & 63; tail != 0) {
    words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
}

std::size_t BitString::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitString BitString::slice(std::size_t first, std::size_t length) const {
  if (first + length > length_) throw StructuralError("slice out of range");
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) out.set(i, (*this)[first + i]);
  return out;
}

BitString BitString::concat(const BitString& tail) const {
  BitString out(length_ + tail.length_);
  for (std::size_t i = 0; i < length_; ++i) out.set(i, (*this)[i]);
  for (std::size_t i = 0; i < tail.length_; ++i) out.set(length_ + i, tail[i]);
  return out;
}

std::string BitString::toString() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::size_t BitString::hash() const noexcept {
  std::uint64_t h = mix(length_ + 0x9e3779b97f4a7c15ULL);
  for (auto w : words_) h = mix(h ^ w);
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
  const std::size_t n = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    const std::size_t bit = i * 64 + static_cast<std::size_t>(std::countr_zero(diff));
    if (bit < a.length_ && bit < b.length_) {
      return a[bit] ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    break;
  }
  return a.length_ <=> b.length_;
}

}  // namespace smuga
