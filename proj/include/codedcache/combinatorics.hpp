#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace codedcache {

/// Largest supported user count. Sets are 64-bit masks, but every
/// enumeration here is exponential in K well before that.
inline constexpr int kMaxUsers = 20;

/// Set of users drawn from [1:K]. User k occupies bit k-1.
class UserSet {
public:
  constexpr UserSet() = default;
  constexpr explicit UserSet(std::uint64_t mask) : mask_(mask) {}

  static UserSet of(std::initializer_list<int> users);
  /// All users 1..k.
  static constexpr UserSet full(int k) { return UserSet(k >= 64 ? ~0ULL : ((1ULL << k) - 1)); }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int user) const { return (mask_ >> (user - 1)) & 1ULL; }

  constexpr UserSet with(int user) const { return UserSet(mask_ | (1ULL << (user - 1))); }
  constexpr UserSet without(int user) const { return UserSet(mask_ & ~(1ULL << (user - 1))); }
  constexpr bool subset_of(UserSet other) const { return (mask_ & ~other.mask_) == 0; }

  /// Members in ascending order.
  std::vector<int> members() const;
  /// "{}", "{1}", "{1,3}".
  std::string str() const;
  /// Compact label used in subfile names: "" for the empty set, "13" for {1,3}.
  std::string label() const;

  friend constexpr bool operator==(UserSet, UserSet) = default;
  friend constexpr auto operator<=>(UserSet a, UserSet b) { return a.mask_ <=> b.mask_; }

private:
  std::uint64_t mask_ = 0;
};

/// One-based arrangement of [1:K].
using Permutation = std::vector<int>;

/// B(n,k); zero when k > n. Throws std::overflow_error past 64 bits.
std::uint64_t binom(int n, int k);

/// P(n,k) = n!/(n-k)!, the number of ordered k-draws without repetition.
std::uint64_t falling_factorial(int n, int k);

/// B(K-1,i) + B(K-2,i) + ... + B(i,i), summed term by term.
std::uint64_t hockey_stick(int K, int i);

/// Subsets of `ground`, ascending by mask. With `size >= 0`, only those of that cardinality.
std::vector<UserSet> subsets_of(UserSet ground, int size = -1);

inline constexpr int kMaxPermutationLength = 10;

/// All permutations of [1:k] in lexicographic order. Throws std::invalid_argument
/// when k is outside [1:kMaxPermutationLength].
std::vector<Permutation> permutations_of(int k);

/// All K-tuples over [1:N] with pairwise distinct entries, lexicographic.
std::vector<std::vector<int>> distinct_tuples(int N, int K);

/// All K-tuples over [1:N], lexicographic.
std::vector<std::vector<int>> all_tuples(int N, int K);

std::string join_ints(const std::vector<int>& values, const std::string& sep = ",");

} // namespace codedcache
