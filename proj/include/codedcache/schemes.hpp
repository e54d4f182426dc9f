#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "codedcache/bit_string.hpp"
#include "codedcache/combinatorics.hpp"
#include "codedcache/rational.hpp"
#include "codedcache/tradeoff_curve.hpp"

namespace codedcache {

/// N files of unit length served to K users, each with M file-units of cache.
struct ProblemInstance {
  int files = 1;
  int users = 1;
  Rational memory;
  /// Bits per smallest subfile piece in simulation.
  std::size_t subfile_bits = 8;

  /// Throws std::invalid_argument unless N >= 1, 1 <= K <= kMaxUsers and 0 <= M <= N.
  void validate() const;
};

/// d[k-1] is the file (1-based) requested by user k.
using DemandVector = std::vector<int>;

/// Throws std::invalid_argument unless |d| == K and every entry lies in [1:N];
/// with `distinct`, entries must also be pairwise different.
void validate_demands(const DemandVector& d, int files, int users, bool distinct);

/// Names a piece of a file. For uncoded placements the label is the set of users
/// caching the piece; for the coded small-cache scheme it is the singleton {part}.
struct SubfileId {
  int file = 0;
  UserSet label;

  std::string str() const;
  friend auto operator<=>(const SubfileId&, const SubfileId&) = default;
};

struct Subfile {
  Rational length; ///< in file units
  std::size_t offset = 0; ///< bit offset inside the file
  BitString bits;
};

/// A stored or broadcast string: the XOR of the listed subfiles.
struct CodedString {
  std::vector<SubfileId> terms;
  BitString payload;
  Rational length;
};

struct Placement {
  int files = 0;
  int users = 0;
  /// True when every cached string is a single verbatim subfile.
  bool uncoded = true;
  std::size_t file_bits = 0;
  std::vector<BitString> library;
  std::map<SubfileId, Subfile> subfiles;
  /// caches[k-1] holds what user k stores.
  std::vector<std::vector<CodedString>> caches;

  Rational cache_usage(int user) const;
  std::vector<SubfileId> subfiles_of(int file) const;
};

struct Message {
  CodedString content;
  /// User subset the message is addressed to (the XOR group for MAN delivery).
  UserSet label;
};

struct DeliverySchedule {
  std::vector<Message> messages;
  Rational load() const;
};

struct UserDecode {
  int user = 0;
  int file = 0;
  bool recovered = false;
  std::vector<SubfileId> missing;
};

struct DecodeReport {
  bool success = true;
  std::vector<UserDecode> users;

  /// First failing user and missing subfile, or empty when everything decoded.
  std::string failure_summary() const;
};

/// Splits every file into B(K,t) equal pieces F_{j,W}, |W| = t, and gives user k
/// every piece whose W contains k. Requires M == tN/K.
Placement man_placement(const ProblemInstance& inst, int t, std::uint64_t seed = 0);

/// One XOR message per (t+1)-subset S: the sum of F_{d_s, S\{s}} over s in S.
DeliverySchedule man_delivery(const Placement& p, const DemandVector& d);

/// Gaussian elimination over GF(2) per user, then bit-exact comparison of the
/// reassembled demanded file against the library.
DecodeReport decode_all(const Placement& p, const DemandVector& d, const DeliverySchedule& s);

/// Coded placement for K >= N, M = 1/K: user i stores the XOR over j of F_{j,i}.
Placement coded_small_placement(const ProblemInstance& inst, std::uint64_t seed = 0);

/// Plain transmissions F_{d_i,s}, s != i (deduplicated), completed so every user
/// can resolve its own part, then greedily merged into XORs where decodability survives.
DeliverySchedule coded_small_delivery(const Placement& p, const DemandVector& d);

std::pair<Placement, DeliverySchedule> coded_small_cache_scheme(const ProblemInstance& inst, const DemandVector& d,
                                                                std::uint64_t seed = 0);

/// Corner points (tN/K, (K-t)/(t+1)) joined by time-sharing. With `few_files_cap`
/// the corner loads are additionally capped by (K-t)N/K, which only bites when N < K.
TradeoffCurve man_curve(int files, int users, bool few_files_cap = false);

/// Achievable load of the MAN scheme with time-sharing. Requires 0 <= M <= N.
Rational man_load(int files, int users, const Rational& memory, bool few_files_cap = false);

/// max over s in [1:min(N,K)] of s - s M / floor(N/s), floored at zero.
Rational cut_set_bound(int files, int users, const Rational& memory);

struct LargeCacheReport {
  bool holds = true;
  Rational threshold_memory;
  Rational man_at_threshold;
  Rational cut_at_threshold;
  Rational man_at_full;
  Rational cut_at_full;
  Rational man_at_midpoint;
  Rational cut_at_midpoint;
  std::string message;
};

/// Checks that the MAN load meets the cut-set bound on [N(K-1)/K, N].
LargeCacheReport large_cache_optimality_check(int files, int users);

} // namespace codedcache
