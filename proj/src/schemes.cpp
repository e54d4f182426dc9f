#include "codedcache/schemes.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gf2_elimination.hpp"

namespace codedcache {

void ProblemInstance::validate() const {
  if (files < 1) throw std::invalid_argument("need at least one file (N >= 1)");
  if (users < 1 || users > kMaxUsers) {
    throw std::invalid_argument("user count K must lie in [1:" + std::to_string(kMaxUsers) + "]");
  }
  if (memory < Rational(0) || memory > Rational(files)) {
    throw std::invalid_argument("memory M = " + memory.str() + " outside [0, N]");
  }
  if (subfile_bits == 0) throw std::invalid_argument("subfile_bits must be positive");
}

void validate_demands(const DemandVector& d, int files, int users, bool distinct) {
  if (static_cast<int>(d.size()) != users) {
    throw std::invalid_argument("demand vector has " + std::to_string(d.size()) + " entries, expected K = " +
                                std::to_string(users));
  }
  for (int f : d) {
    if (f < 1 || f > files) throw std::invalid_argument("demanded file " + std::to_string(f) + " outside [1:N]");
  }
  if (distinct) {
    std::set<int> seen(d.begin(), d.end());
    if (seen.size() != d.size()) throw std::invalid_argument("demands must be pairwise distinct");
  }
}

std::string SubfileId::str() const {
  return "F_{" + std::to_string(file) + "," + (label.empty() ? std::string("0") : label.label()) + "}";
}

Rational Placement::cache_usage(int user) const {
  Rational total;
  for (const auto& entry : caches.at(static_cast<std::size_t>(user - 1))) total += entry.length;
  return total;
}

std::vector<SubfileId> Placement::subfiles_of(int file) const {
  std::vector<SubfileId> out;
  for (const auto& [id, sub] : subfiles) {
    if (id.file == file) out.push_back(id);
  }
  return out;
}

Rational DeliverySchedule::load() const {
  Rational total;
  for (const auto& m : messages) total += m.content.length;
  return total;
}

std::string DecodeReport::failure_summary() const {
  for (const auto& u : users) {
    if (u.recovered) continue;
    std::ostringstream os;
    os << "user " << u.user << " failed to decode file " << u.file;
    if (!u.missing.empty()) os << ": missing " << u.missing.front().str();
    else os << ": reassembled bits differ from the library";
    return os.str();
  }
  return {};
}

namespace {

std::vector<BitString> random_library(int files, std::size_t file_bits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BitString> library;
  library.reserve(static_cast<std::size_t>(files));
  for (int j = 0; j < files; ++j) library.push_back(BitString::random(file_bits, rng));
  return library;
}

CodedString combine(const Placement& p, std::vector<SubfileId> terms) {
  CodedString out;
  std::sort(terms.begin(), terms.end());
  for (const auto& id : terms) {
    const Subfile& sub = p.subfiles.at(id);
    out.payload ^= sub.bits;
    out.length = max(out.length, sub.length);
  }
  out.terms = std::move(terms);
  return out;
}

std::map<SubfileId, std::size_t> index_subfiles(const Placement& p) {
  std::map<SubfileId, std::size_t> index;
  for (const auto& [id, sub] : p.subfiles) index.emplace(id, index.size());
  return index;
}

std::vector<std::size_t> unknowns_of(const std::map<SubfileId, std::size_t>& index,
                                     const std::vector<SubfileId>& terms) {
  std::vector<std::size_t> out;
  out.reserve(terms.size());
  for (const auto& id : terms) out.push_back(index.at(id));
  return out;
}

// Symbolic decodability: can every user pin down every piece of its demanded file?
bool everyone_decodes(const Placement& p, const DemandVector& d, const std::vector<std::vector<SubfileId>>& messages) {
  const auto index = index_subfiles(p);
  const BitString nothing;
  for (int k = 1; k <= p.users; ++k) {
    detail::Gf2System system(index.size());
    for (const auto& entry : p.caches[static_cast<std::size_t>(k - 1)]) {
      system.add_equation(unknowns_of(index, entry.terms), nothing);
    }
    for (const auto& terms : messages) system.add_equation(unknowns_of(index, terms), nothing);
    system.reduce();
    for (const auto& id : p.subfiles_of(d[static_cast<std::size_t>(k - 1)])) {
      if (!system.solve_for(index.at(id))) return false;
    }
  }
  return true;
}

} // namespace

Placement man_placement(const ProblemInstance& inst, int t, std::uint64_t seed) {
  inst.validate();
  const int N = inst.files;
  const int K = inst.users;
  if (t < 0 || t > K) throw std::invalid_argument("t = " + std::to_string(t) + " outside [0:K]");
  if (inst.memory != Rational(t * N, K)) {
    throw std::invalid_argument("memory M = " + inst.memory.str() + " does not equal tN/K = " +
                                Rational(t * N, K).str());
  }

  const auto pieces = binom(K, t);
  const auto padded = std::lcm(pieces, static_cast<std::uint64_t>(K));
  Placement p;
  p.files = N;
  p.users = K;
  p.uncoded = true;
  p.file_bits = static_cast<std::size_t>(padded) * inst.subfile_bits;
  p.library = random_library(N, p.file_bits, seed);
  p.caches.resize(static_cast<std::size_t>(K));

  const std::size_t piece_bits = p.file_bits / pieces;
  const Rational piece_length(1, static_cast<std::int64_t>(pieces));
  const auto sets = subsets_of(UserSet::full(K), t);
  for (int j = 1; j <= N; ++j) {
    for (std::size_t idx = 0; idx < sets.size(); ++idx) {
      const std::size_t offset = idx * piece_bits;
      SubfileId id{j, sets[idx]};
      p.subfiles.emplace(id, Subfile{piece_length, offset,
                                     p.library[static_cast<std::size_t>(j - 1)].slice(offset, piece_bits)});
    }
  }
  for (const auto& [id, sub] : p.subfiles) {
    for (int k : id.label.members()) {
      p.caches[static_cast<std::size_t>(k - 1)].push_back(CodedString{{id}, sub.bits, sub.length});
    }
  }
  return p;
}

DeliverySchedule man_delivery(const Placement& p, const DemandVector& d) {
  validate_demands(d, p.files, p.users, false);
  if (p.subfiles.empty()) throw std::invalid_argument("placement has no subfiles");
  const int t = p.subfiles.begin()->first.label.size();
  DeliverySchedule schedule;
  for (UserSet group : subsets_of(UserSet::full(p.users), t + 1)) {
    std::vector<SubfileId> terms;
    for (int s : group.members()) terms.push_back(SubfileId{d[static_cast<std::size_t>(s - 1)], group.without(s)});
    schedule.messages.push_back(Message{combine(p, std::move(terms)), group});
  }
  return schedule;
}

DecodeReport decode_all(const Placement& p, const DemandVector& d, const DeliverySchedule& s) {
  validate_demands(d, p.files, p.users, false);
  const auto index = index_subfiles(p);
  DecodeReport report;
  for (int k = 1; k <= p.users; ++k) {
    UserDecode outcome;
    outcome.user = k;
    outcome.file = d[static_cast<std::size_t>(k - 1)];

    detail::Gf2System system(index.size());
    for (const auto& entry : p.caches[static_cast<std::size_t>(k - 1)]) {
      system.add_equation(unknowns_of(index, entry.terms), entry.payload);
    }
    for (const auto& m : s.messages) system.add_equation(unknowns_of(index, m.content.terms), m.content.payload);
    system.reduce();

    BitString rebuilt(p.file_bits);
    for (const auto& id : p.subfiles_of(outcome.file)) {
      const auto solved = system.solve_for(index.at(id));
      if (!solved) {
        outcome.missing.push_back(id);
        continue;
      }
      const Subfile& sub = p.subfiles.at(id);
      for (std::size_t b = 0; b < sub.bits.size(); ++b) rebuilt.set(sub.offset + b, solved->get(b));
    }
    outcome.recovered =
        outcome.missing.empty() && rebuilt == p.library[static_cast<std::size_t>(outcome.file - 1)];
    report.success = report.success && outcome.recovered;
    report.users.push_back(std::move(outcome));
  }
  return report;
}

Placement coded_small_placement(const ProblemInstance& inst, std::uint64_t seed) {
  inst.validate();
  const int N = inst.files;
  const int K = inst.users;
  if (K < N) throw std::invalid_argument("coded small-cache scheme requires K >= N");
  if (inst.memory != Rational(1, K)) {
    throw std::invalid_argument("coded small-cache scheme requires M = 1/K, got " + inst.memory.str());
  }

  Placement p;
  p.files = N;
  p.users = K;
  p.uncoded = false;
  p.file_bits = static_cast<std::size_t>(K) * inst.subfile_bits;
  p.library = random_library(N, p.file_bits, seed);
  p.caches.resize(static_cast<std::size_t>(K));

  const Rational part_length(1, K);
  for (int j = 1; j <= N; ++j) {
    for (int i = 1; i <= K; ++i) {
      const std::size_t offset = static_cast<std::size_t>(i - 1) * inst.subfile_bits;
      p.subfiles.emplace(SubfileId{j, UserSet{}.with(i)},
                         Subfile{part_length, offset,
                                 p.library[static_cast<std::size_t>(j - 1)].slice(offset, inst.subfile_bits)});
    }
  }
  for (int i = 1; i <= K; ++i) {
    std::vector<SubfileId> column;
    for (int j = 1; j <= N; ++j) column.push_back(SubfileId{j, UserSet{}.with(i)});
    p.caches[static_cast<std::size_t>(i - 1)].push_back(combine(p, std::move(column)));
  }
  return p;
}

DeliverySchedule coded_small_delivery(const Placement& p, const DemandVector& d) {
  validate_demands(d, p.files, p.users, false);
  const int K = p.users;
  const auto part = [](int file, int i) { return SubfileId{file, UserSet{}.with(i)}; };

  std::set<SubfileId> sent;
  for (int i = 1; i <= K; ++i) {
    for (int s = 1; s <= K; ++s) {
      if (s != i) sent.insert(part(d[static_cast<std::size_t>(i - 1)], s));
    }
  }
  // A user strips its cached XOR once every other file's piece in its column has
  // arrived; otherwise its own piece must be sent outright. Repeat until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i <= K; ++i) {
      const int wanted = d[static_cast<std::size_t>(i - 1)];
      if (sent.contains(part(wanted, i))) continue;
      bool strippable = true;
      for (int j = 1; j <= p.files; ++j) {
        if (j != wanted && !sent.contains(part(j, i))) strippable = false;
      }
      if (!strippable) {
        sent.insert(part(wanted, i));
        changed = true;
      }
    }
  }

  std::vector<std::vector<SubfileId>> messages;
  for (const auto& id : sent) messages.push_back({id});
  for (std::size_t a = 0; a < messages.size(); ++a) {
    for (std::size_t b = a + 1; b < messages.size();) {
      auto trial = messages;
      trial[a].insert(trial[a].end(), trial[b].begin(), trial[b].end());
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(b));
      if (everyone_decodes(p, d, trial)) {
        messages = std::move(trial);
      } else {
        ++b;
      }
    }
  }

  DeliverySchedule schedule;
  for (auto& terms : messages) {
    UserSet audience;
    for (const auto& id : terms) {
      const int column = id.label.members().front();
      for (int i = 1; i <= K; ++i) {
        const int wanted = d[static_cast<std::size_t>(i - 1)];
        if (id.file == wanted || column == i) audience = audience.with(i);
      }
    }
    schedule.messages.push_back(Message{combine(p, std::move(terms)), audience});
  }
  return schedule;
}

std::pair<Placement, DeliverySchedule> coded_small_cache_scheme(const ProblemInstance& inst, const DemandVector& d,
                                                                std::uint64_t seed) {
  validate_demands(d, inst.files, inst.users, false);
  Placement p = coded_small_placement(inst, seed);
  DeliverySchedule s = coded_small_delivery(p, d);
  return {std::move(p), std::move(s)};
}

TradeoffCurve man_curve(int files, int users, bool few_files_cap) {
  if (files < 1 || users < 1) throw std::invalid_argument("need N >= 1 and K >= 1");
  std::vector<CurvePoint> corners;
  for (int t = 0; t <= users; ++t) {
    Rational load(users - t, t + 1);
    if (few_files_cap) load = min(load, Rational((users - t) * files, users));
    corners.push_back(CurvePoint{Rational(t * files, users), load});
  }
  return TradeoffCurve::lower_convex_envelope(std::move(corners));
}

Rational man_load(int files, int users, const Rational& memory, bool few_files_cap) {
  if (memory < Rational(0) || memory > Rational(files)) {
    throw std::invalid_argument("memory M = " + memory.str() + " outside [0, N]");
  }
  return man_curve(files, users, few_files_cap).evaluate(memory);
}

Rational cut_set_bound(int files, int users, const Rational& memory) {
  Rational best;
  for (int s = 1; s <= std::min(files, users); ++s) {
    best = max(best, Rational(s) - Rational(s) * memory / Rational(files / s));
  }
  return best;
}

LargeCacheReport large_cache_optimality_check(int files, int users) {
  LargeCacheReport r;
  const Rational N(files);
  r.threshold_memory = Rational(files * (users - 1), users);
  r.man_at_threshold = man_load(files, users, r.threshold_memory);
  r.cut_at_threshold = cut_set_bound(files, users, r.threshold_memory);
  r.man_at_full = man_load(files, users, N);
  r.cut_at_full = cut_set_bound(files, users, N);
  const Rational mid = (r.threshold_memory + N) / Rational(2);
  r.man_at_midpoint = man_load(files, users, mid);
  r.cut_at_midpoint = cut_set_bound(files, users, mid);

  std::ostringstream os;
  if (r.man_at_threshold != Rational(1, users) || r.man_at_threshold != r.cut_at_threshold) {
    r.holds = false;
    os << "at M=" << r.threshold_memory << ": man_load=" << r.man_at_threshold << " cut_set=" << r.cut_at_threshold
       << "; ";
  }
  if (!r.man_at_full.is_zero() || r.man_at_full != r.cut_at_full) {
    r.holds = false;
    os << "at M=" << N << ": man_load=" << r.man_at_full << " cut_set=" << r.cut_at_full << "; ";
  }
  if (r.man_at_midpoint != r.cut_at_midpoint) {
    r.holds = false;
    os << "at M=" << mid << ": man_load=" << r.man_at_midpoint << " cut_set=" << r.cut_at_midpoint << "; ";
  }
  r.message = r.holds ? "man_load meets the cut-set bound on [" + r.threshold_memory.str() + ", " + N.str() + "]"
                      : os.str();
  return r;
}

} // namespace codedcache
