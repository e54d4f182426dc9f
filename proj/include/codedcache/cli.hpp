#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "codedcache/rational.hpp"

namespace codedcache::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  int files = 0;
  int users = 0;
  std::optional<Rational> memory;
  std::optional<int> t;
  std::vector<int> demands;
  bool all_demands = false;
  int grid = 2;
  std::string out = "-";
  std::string format;
  std::uint64_t seed = 1;
  std::string scheme = "man";
  std::size_t subfile_bits = 8;
  std::vector<int> ordering;
  bool lemma1_sets = false;
};

/// Parses argv-style arguments (without the program name) and runs the command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_tradeoff(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_graph(const RunConfig& config, std::ostream& out, std::ostream& err);

/// One tradeoff table row, as emitted by cmd_tradeoff.
struct TradeoffRow {
  Rational memory;
  Rational man_load;
  Rational cut_set;
  Rational lower_bound;
  Rational lp_oracle;
  friend bool operator==(const TradeoffRow&, const TradeoffRow&) = default;
};

std::vector<TradeoffRow> tradeoff_rows(int files, int users, int grid);
std::vector<TradeoffRow> parse_tradeoff_csv(std::istream& is);
std::vector<TradeoffRow> parse_tradeoff_json(std::istream& is);

/// "1,2,3" -> {1,2,3}. Throws std::invalid_argument on malformed input.
std::vector<int> parse_int_list(const std::string& text);

} // namespace codedcache::cli
