#include "codedcache/bit_string.hpp"

#include <algorithm>
#include <stdexcept>

namespace codedcache {

BitString BitString::random(std::size_t size, std::mt19937_64& rng) {
  BitString b(size);
  for (auto& w : b.words_) w = rng();
  if (size % 64 != 0 && !b.words_.empty()) b.words_.back() &= (1ULL << (size % 64)) - 1;
  return b;
}

void BitString::set(std::size_t i, bool v) {
  if (v) {
    words_[i / 64] |= 1ULL << (i % 64);
  } else {
    words_[i / 64] &= ~(1ULL << (i % 64));
  }
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > size_) throw std::out_of_range("bit slice past end");
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) out.set(i, get(offset + i));
  return out;
}

void BitString::append(const BitString& other) {
  const std::size_t base = size_;
  size_ += other.size_;
  words_.resize((size_ + 63) / 64, 0);
  for (std::size_t i = 0; i < other.size_; ++i) set(base + i, other.get(i));
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size_ > size_) {
    size_ = other.size_;
    words_.resize(other.words_.size(), 0);
  }
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

} // namespace codedcache
