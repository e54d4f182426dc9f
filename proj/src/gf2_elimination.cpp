#include "gf2_elimination.hpp"

#include <stdexcept>
#include <utility>

namespace codedcache::detail {

void Gf2System::add_equation(const std::vector<std::size_t>& unknowns, const BitString& payload) {
  Row row{std::vector<std::uint64_t>(words_, 0), payload};
  for (std::size_t v : unknowns) {
    if (v >= unknowns_) throw std::out_of_range("unknown index out of range");
    row.coeffs[v / 64] ^= 1ULL << (v % 64);
  }
  rows_.push_back(std::move(row));
  pivot_row_.clear();
}

void Gf2System::reduce() {
  pivot_row_.assign(unknowns_, -1);
  std::size_t next = 0;
  for (std::size_t v = 0; v < unknowns_ && next < rows_.size(); ++v) {
    std::size_t pick = next;
    while (pick < rows_.size() && !bit(rows_[pick], v)) ++pick;
    if (pick == rows_.size()) continue;
    std::swap(rows_[next], rows_[pick]);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == next || !bit(rows_[r], v)) continue;
      for (std::size_t w = 0; w < words_; ++w) rows_[r].coeffs[w] ^= rows_[next].coeffs[w];
      rows_[r].payload ^= rows_[next].payload;
    }
    pivot_row_[v] = static_cast<long>(next);
    ++next;
  }
}

std::optional<BitString> Gf2System::solve_for(std::size_t v) const {
  if (pivot_row_.size() != unknowns_) throw std::logic_error("solve_for called before reduce");
  const long r = pivot_row_[v];
  if (r < 0) return std::nullopt;
  // In reduced form the unknown is determined iff its pivot row is the unit vector.
  const Row& row = rows_[static_cast<std::size_t>(r)];
  for (std::size_t w = 0; w < words_; ++w) {
    const std::uint64_t expected = (w == v / 64) ? (1ULL << (v % 64)) : 0;
    if (row.coeffs[w] != expected) return std::nullopt;
  }
  return row.payload;
}

} // namespace codedcache::detail
