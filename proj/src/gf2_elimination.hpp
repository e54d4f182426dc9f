#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "codedcache/bit_string.hpp"

namespace codedcache::detail {

/// Linear system over GF(2) whose unknowns are equal-role bit blocks.
/// Each equation says "XOR of these unknowns equals this payload".
class Gf2System {
public:
  explicit Gf2System(std::size_t unknowns) : unknowns_(unknowns), words_((unknowns + 63) / 64) {}

  void add_equation(const std::vector<std::size_t>& unknowns, const BitString& payload);

  /// Brings the system to reduced row-echelon form.
  void reduce();

  /// Payload of unknown `v` if the equations pin it down. Requires reduce().
  std::optional<BitString> solve_for(std::size_t v) const;

private:
  struct Row {
    std::vector<std::uint64_t> coeffs;
    BitString payload;
  };

  bool bit(const Row& r, std::size_t v) const { return (r.coeffs[v / 64] >> (v % 64)) & 1ULL; }

  std::size_t unknowns_;
  std::size_t words_;
  std::vector<Row> rows_;
  /// pivot_row_[v] = row index whose pivot is v, or -1.
  std::vector<long> pivot_row_;
};

} // namespace codedcache::detail
