#include "codedcache/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace codedcache {

UserSet UserSet::of(std::initializer_list<int> users) {
  UserSet s;
  for (int u : users) {
    if (u < 1 || u > 64) throw std::invalid_argument("user index out of range: " + std::to_string(u));
    s = s.with(u);
  }
  return s;
}

std::vector<int> UserSet::members() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string UserSet::str() const { return "{" + join_ints(members()) + "}"; }

std::string UserSet::label() const {
  std::string out;
  for (int u : members()) out += std::to_string(u);
  return out;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t falling_factorial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  unsigned __int128 result = 1;
  for (int i = 0; i < k; ++i) {
    result *= static_cast<unsigned>(n - i);
    if (result > UINT64_MAX) throw std::overflow_error("falling factorial exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t hockey_stick(int K, int i) {
  std::uint64_t total = 0;
  for (int row = K - 1; row >= i; --row) total += binom(row, i);
  return total;
}

std::vector<UserSet> subsets_of(UserSet ground, int size) {
  std::vector<UserSet> out;
  // Enumerate submasks in ascending order via the (s - g) & g trick.
  const std::uint64_t g = ground.mask();
  std::uint64_t s = 0;
  while (true) {
    if (size < 0 || std::popcount(s) == size) out.emplace_back(s);
    if (s == g) break;
    s = (s - g) & g;
  }
  return out;
}

std::vector<Permutation> permutations_of(int k) {
  if (k < 1 || k > kMaxPermutationLength) {
    throw std::invalid_argument("permutation length " + std::to_string(k) + " outside [1:" +
                                std::to_string(kMaxPermutationLength) + "]");
  }
  Permutation p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

void extend_tuples(int N, int K, bool distinct, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == K) {
    out.push_back(current);
    return;
  }
  for (int v = 1; v <= N; ++v) {
    if (distinct && std::find(current.begin(), current.end(), v) != current.end()) continue;
    current.push_back(v);
    extend_tuples(N, K, distinct, current, out);
    current.pop_back();
  }
}

} // namespace

std::vector<std::vector<int>> distinct_tuples(int N, int K) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  if (K <= N) extend_tuples(N, K, true, current, out);
  return out;
}

std::vector<std::vector<int>> all_tuples(int N, int K) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  extend_tuples(N, K, false, current, out);
  return out;
}

std::string join_ints(const std::vector<int>& values, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

} // namespace codedcache
