#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace codedcache {

/// Fixed-length bit sequence with XOR, used for simulated file contents.
class BitString {
public:
  BitString() = default;
  explicit BitString(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitString random(std::size_t size, std::mt19937_64& rng);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1ULL; }
  void set(std::size_t i, bool v);

  BitString slice(std::size_t offset, std::size_t length) const;
  void append(const BitString& other);

  /// XOR in place; the shorter operand is treated as zero-padded.
  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }

  friend bool operator==(const BitString&, const BitString&) = default;

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace codedcache
