#include "codedcache/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "codedcache/converse.hpp"
#include "codedcache/index_coding.hpp"
#include "codedcache/schemes.hpp"

namespace codedcache::cli {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxSimulatedDemands = 100'000;

// Writes to the file named by `path`, or to `fallback` for "-".
int with_output(const std::string& path, std::ostream& fallback, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  if (path.empty() || path == "-") return body(fallback);
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return kUsageError;
  }
  return body(file);
}

ordered_json rational_list(const std::vector<Rational>& values) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

int usage(std::ostream& err, const std::string& message) {
  err << "error: " << message << '\n';
  return kUsageError;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  return out;
}

} // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& cell : split_csv_line(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) throw std::invalid_argument("malformed integer list: '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<TradeoffRow> tradeoff_rows(int files, int users, int grid) {
  std::vector<TradeoffRow> rows;
  for (const auto& m : memory_grid(files, users, grid)) {
    rows.push_back(TradeoffRow{m, man_load(files, users, m), cut_set_bound(files, users, m),
                               lower_bound(files, users, m), lp_oracle(files, users, m)});
  }
  return rows;
}

std::vector<TradeoffRow> parse_tradeoff_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("tradeoff csv: missing header");
  const auto header = split_csv_line(line);
  if (header.size() < 5 || header[0] != "M" || header[1] != "man_load" || header[2] != "cut_set" ||
      header[3] != "lower_bound" || header[4] != "lp_oracle") {
    throw std::runtime_error("tradeoff csv: unexpected header '" + line + "'");
  }
  std::vector<TradeoffRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() < 5) throw std::runtime_error("tradeoff csv: short row '" + line + "'");
    rows.push_back(TradeoffRow{Rational::parse(cells[0]), Rational::parse(cells[1]), Rational::parse(cells[2]),
                               Rational::parse(cells[3]), Rational::parse(cells[4])});
  }
  return rows;
}

std::vector<TradeoffRow> parse_tradeoff_json(std::istream& is) {
  const auto doc = nlohmann::json::parse(is);
  std::vector<TradeoffRow> rows;
  for (const auto& r : doc.at("rows")) {
    rows.push_back(TradeoffRow{Rational::parse(r.at("M").get<std::string>()),
                               Rational::parse(r.at("man_load").get<std::string>()),
                               Rational::parse(r.at("cut_set").get<std::string>()),
                               Rational::parse(r.at("lower_bound").get<std::string>()),
                               Rational::parse(r.at("lp_oracle").get<std::string>())});
  }
  return rows;
}

int cmd_tradeoff(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.files < 1 || config.users < 1) return usage(err, "--n and --k must be positive");
  if (config.files < config.users) return usage(err, "N<K unsupported for converse");
  if (config.grid < 1) return usage(err, "--grid must be positive");
  const std::string format = config.format.empty() ? "csv" : config.format;
  if (format != "csv" && format != "json") return usage(err, "--format must be csv or json");

  const auto rows = tradeoff_rows(config.files, config.users, config.grid);
  return with_output(config.out, out, err, [&](std::ostream& os) {
    if (format == "csv") {
      os << "M,man_load,cut_set,lower_bound,lp_oracle,M_dec,man_load_dec,cut_set_dec,lower_bound_dec,lp_oracle_dec\n";
      for (const auto& r : rows) {
        os << r.memory << ',' << r.man_load << ',' << r.cut_set << ',' << r.lower_bound << ',' << r.lp_oracle << ','
           << r.memory.decimal() << ',' << r.man_load.decimal() << ',' << r.cut_set.decimal() << ','
           << r.lower_bound.decimal() << ',' << r.lp_oracle.decimal() << '\n';
      }
    } else {
      ordered_json doc;
      doc["command"] = "tradeoff";
      doc["N"] = config.files;
      doc["K"] = config.users;
      doc["grid"] = config.grid;
      doc["rows"] = ordered_json::array();
      for (const auto& r : rows) {
        ordered_json row;
        row["M"] = r.memory.str();
        row["man_load"] = r.man_load.str();
        row["cut_set"] = r.cut_set.str();
        row["lower_bound"] = r.lower_bound.str();
        row["lp_oracle"] = r.lp_oracle.str();
        row["decimal"] = {{"M", r.memory.to_double()},
                          {"man_load", r.man_load.to_double()},
                          {"cut_set", r.cut_set.to_double()},
                          {"lower_bound", r.lower_bound.to_double()},
                          {"lp_oracle", r.lp_oracle.to_double()}};
        doc["rows"].push_back(row);
      }
      os << doc.dump(2) << '\n';
    }
    return static_cast<int>(kSuccess);
  });
}

namespace {

ordered_json theorem3_check(int N, int K, int grid) {
  const auto report = verify_theorem3(N, K, grid);
  ordered_json check;
  check["name"] = "theorem3_grid";
  check["passed"] = report.holds;
  ordered_json mismatches = ordered_json::array();
  for (const auto& p : report.points) {
    if (!p.agree()) {
      mismatches.push_back({{"M", p.memory.str()},
                            {"lower_bound", p.lower_bound.str()},
                            {"lp_oracle", p.lp_oracle.str()},
                            {"man_load", p.man_load.str()}});
    }
  }
  check["grid_points"] = report.points.size();
  check["mismatches"] = mismatches;
  ordered_json corners = ordered_json::array();
  for (const auto& c : report.converse.corners()) corners.push_back({c.memory.str(), c.load.str()});
  check["converse_corners"] = corners;
  check["curves_match"] = report.curves_match;
  return check;
}

ordered_json acyclicity_check(int N, int K) {
  ordered_json check;
  check["name"] = "lemma1_acyclicity";
  const std::uint64_t total = falling_factorial(N, K) * falling_factorial(K, K);
  if (K > kMaxPermutationLength || total > kMaxAggregatedInequalities) {
    check["passed"] = true;
    check["skipped"] = true;
    check["reason"] = "more than " + std::to_string(kMaxAggregatedInequalities) + " (d,u) pairs";
    return check;
  }
  const auto split = SubfileSplit::uniform(N, K);
  const auto orderings = permutations_of(K);
  std::size_t checked = 0;
  ordered_json failures = ordered_json::array();
  for (const auto& d : distinct_tuples(N, K)) {
    const auto g = build_graph(split, d);
    for (const auto& u : orderings) {
      const auto set = lemma1_set(d, u);
      const bool ok = is_acyclic(g, g.indices_of(set.flatten())) && respects_levels(g, set);
      ++checked;
      if (!ok) failures.push_back({{"d", join_ints(d)}, {"u", join_ints(u)}});
    }
  }
  check["passed"] = failures.empty();
  check["sets_checked"] = checked;
  check["failures"] = failures;
  return check;
}

ordered_json aggregation_check(int N, int K) {
  ordered_json check;
  check["name"] = "brute_force_aggregate";
  const auto closed = aggregate_coefficients(N, K);
  check["closed_form"] = rational_list(closed);
  try {
    const auto brute = brute_force_aggregate(N, K);
    check["brute_force"] = rational_list(brute);
    bool ok = brute == closed;
    for (int i = 0; i <= K; ++i) ok = ok && closed[static_cast<std::size_t>(i)] == Rational(K - i, (i + 1) * N);
    check["passed"] = ok;
  } catch (const std::invalid_argument& e) {
    check["passed"] = true;
    check["skipped"] = true;
    check["reason"] = e.what();
  }
  return check;
}

ordered_json elimination_check(int N, int K) {
  ordered_json check;
  check["name"] = "elimination_residuals";
  bool ok = true;
  ordered_json bounds = ordered_json::array();
  for (int q = 1; q <= K; ++q) {
    const auto b = eliminate(N, K, q);
    for (int i = 0; i <= K; ++i) {
      const auto& z = b.residual[static_cast<std::size_t>(i)];
      ok = ok && z.sign() >= 0 && z == z_coefficient(N, K, i, q);
      if (i == q - 1 || i == q) ok = ok && z.is_zero();
    }
    ok = ok && b.affine_at(Rational((q - 1) * N, K)) == Rational(K - q + 1, q);
    ok = ok && b.affine_at(Rational(q * N, K)) == Rational(K - q, q + 1);
    bounds.push_back({{"q", q},
                      {"intercept", b.intercept.str()},
                      {"slope", b.slope.str()},
                      {"residual", rational_list(b.residual)}});
  }
  check["passed"] = ok;
  check["bounds"] = bounds;
  return check;
}

ordered_json large_cache_check(int N, int K) {
  const auto r = large_cache_optimality_check(N, K);
  ordered_json check;
  check["name"] = "large_cache_optimality";
  check["passed"] = r.holds;
  check["threshold_M"] = r.threshold_memory.str();
  check["man_load"] = r.man_at_threshold.str();
  check["cut_set"] = r.cut_at_threshold.str();
  check["message"] = r.message;
  return check;
}

} // namespace

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int N = config.files;
  const int K = config.users;
  if (N < 1 || K < 1) return usage(err, "--n and --k must be positive");
  if (N < K) return usage(err, "N<K unsupported for converse");
  if (K > kMaxPermutationLength) return usage(err, "K above " + std::to_string(kMaxPermutationLength));
  if (config.grid < 1) return usage(err, "--grid must be positive");

  ordered_json doc;
  doc["command"] = "verify";
  doc["N"] = N;
  doc["K"] = K;
  ordered_json checks = ordered_json::array();
  checks.push_back(theorem3_check(N, K, config.grid));
  checks.push_back(acyclicity_check(N, K));
  checks.push_back(aggregation_check(N, K));
  checks.push_back(elimination_check(N, K));
  checks.push_back(large_cache_check(N, K));
  bool passed = true;
  for (const auto& c : checks) passed = passed && c.at("passed").get<bool>();
  doc["passed"] = passed;
  doc["checks"] = checks;

  return with_output(config.out, out, err, [&](std::ostream& os) {
    os << doc.dump(2) << '\n';
    return static_cast<int>(passed ? kSuccess : kVerificationFailed);
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int N = config.files;
  const int K = config.users;
  if (N < 1 || K < 1 || K > kMaxUsers) return usage(err, "--n and --k must be positive (K <= 20)");
  const std::string format = config.format.empty() ? "text" : config.format;
  if (format != "text" && format != "json") return usage(err, "--format must be text or json for simulate");

  ProblemInstance inst{N, K, Rational(0), config.subfile_bits};
  int t = 0;
  if (config.scheme == "man") {
    if (config.t) {
      t = *config.t;
    } else if (config.memory) {
      const Rational scaled = *config.memory * Rational(K, N);
      if (!scaled.is_integer()) return usage(err, "M must be a multiple of N/K for the MAN scheme");
      t = static_cast<int>(scaled.num());
    } else {
      return usage(err, "MAN simulation needs --t or --m");
    }
    if (t < 0 || t > K) return usage(err, "--t must lie in [0:K]");
    inst.memory = Rational(t * N, K);
  } else if (config.scheme == "coded-small") {
    if (K < N) return usage(err, "coded-small scheme requires K >= N");
    inst.memory = Rational(1, K);
    if (config.memory && *config.memory != inst.memory) return usage(err, "coded-small scheme runs at M = 1/K");
  } else {
    return usage(err, "--scheme must be man or coded-small");
  }
  if (config.subfile_bits == 0) return usage(err, "--subfile-bits must be positive");

  std::vector<DemandVector> demands;
  if (config.all_demands) {
    double count = 1;
    for (int k = 0; k < K; ++k) count *= N;
    if (count > static_cast<double>(kMaxSimulatedDemands)) return usage(err, "too many demand vectors for --all-demands");
    demands = all_tuples(N, K);
  } else if (!config.demands.empty()) {
    try {
      validate_demands(config.demands, N, K, false);
    } catch (const std::invalid_argument& e) {
      return usage(err, e.what());
    }
    demands.push_back(config.demands);
  } else {
    return usage(err, "give --demands or --all-demands");
  }

  ordered_json doc;
  doc["command"] = "simulate";
  doc["scheme"] = config.scheme;
  doc["N"] = N;
  doc["K"] = K;
  doc["M"] = inst.memory.str();
  if (config.scheme == "man") doc["t"] = t;
  doc["runs"] = ordered_json::array();
  Rational worst;
  bool all_ok = true;
  std::ostringstream text;
  text << "scheme " << config.scheme << " N=" << N << " K=" << K << " M=" << inst.memory;
  if (config.scheme == "man") text << " t=" << t;
  text << '\n';

  const Placement man = config.scheme == "man" ? man_placement(inst, t, config.seed) : Placement{};
  for (const auto& d : demands) {
    Placement coded;
    DeliverySchedule schedule;
    if (config.scheme == "man") {
      schedule = man_delivery(man, d);
    } else {
      std::tie(coded, schedule) = coded_small_cache_scheme(inst, d, config.seed);
    }
    const Placement& placement = config.scheme == "man" ? man : coded;
    const auto decoded = decode_all(placement, d, schedule);
    const Rational load = schedule.load();
    worst = max(worst, load);
    all_ok = all_ok && decoded.success;

    ordered_json run;
    run["demands"] = join_ints(d);
    run["load"] = load.str();
    run["transmissions"] = schedule.messages.size();
    run["decoded"] = decoded.success;
    ordered_json users = ordered_json::array();
    text << "demands " << join_ints(d) << ": load " << load << ", " << schedule.messages.size()
         << " transmissions, ";
    for (const auto& u : decoded.users) {
      users.push_back({{"user", u.user}, {"file", u.file}, {"recovered", u.recovered}});
      text << "user" << u.user << (u.recovered ? "=ok " : "=FAIL ");
    }
    if (!decoded.success) text << "(" << decoded.failure_summary() << ")";
    text << '\n';
    run["users"] = users;
    doc["runs"].push_back(run);
  }
  doc["worst_case_load"] = worst.str();
  doc["all_decoded"] = all_ok;
  text << "worst-case load " << worst << (all_ok ? ", all users decoded\n" : ", DECODE FAILURES\n");

  return with_output(config.out, out, err, [&](std::ostream& os) {
    if (format == "json") {
      os << doc.dump(2) << '\n';
    } else {
      os << text.str();
    }
    return static_cast<int>(all_ok ? kSuccess : kVerificationFailed);
  });
}

int cmd_graph(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int N = config.files;
  const int K = config.users;
  if (N < 1 || K < 1) return usage(err, "--n and --k must be positive");
  if (N < K) return usage(err, "N<K unsupported for converse");
  if (K > kMaxPermutationLength) return usage(err, "K above " + std::to_string(kMaxPermutationLength));
  try {
    validate_demands(config.demands, N, K, true);
  } catch (const std::invalid_argument& e) {
    return usage(err, e.what());
  }
  if (config.t && (*config.t < 0 || *config.t > K)) return usage(err, "--t must lie in [0:K]");

  const auto split = config.t ? SubfileSplit::man(N, K, *config.t) : SubfileSplit::uniform(N, K);
  const auto g = build_graph(split, config.demands);

  std::vector<Permutation> orderings;
  if (!config.ordering.empty()) {
    orderings.push_back(config.ordering);
  } else if (config.lemma1_sets) {
    orderings = permutations_of(K);
  }

  std::ostringstream body;
  write_graph(body, g);
  if (!orderings.empty()) {
    body << "lemma1 " << orderings.size() << '\n';
    for (const auto& u : orderings) {
      Lemma1Set set;
      try {
        set = lemma1_set(config.demands, u);
      } catch (const std::invalid_argument& e) {
        return usage(err, e.what());
      }
      const auto nodes = g.indices_of(set.flatten());
      const bool acyclic = is_acyclic(g, nodes);
      std::vector<int> ids(nodes.begin(), nodes.end());
      body << join_ints(u) << ' ' << (acyclic ? acyclic_bound_value(g, nodes).str() : std::string("-")) << ' '
           << (acyclic ? 1 : 0) << ' ' << join_ints(ids) << '\n';
    }
  }
  return with_output(config.out, out, err, [&](std::ostream& os) {
    os << body.str();
    return static_cast<int>(kSuccess);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coded caching schemes and uncoded-placement converse checker", "codedcache"};
  app.require_subcommand(1);
  RunConfig config;
  std::string memory_text;
  std::string demands_text;
  std::string ordering_text;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--n", config.files, "number of files N")->required();
    sub->add_option("--k", config.users, "number of users K")->required();
  };

  auto* tradeoff = app.add_subcommand("tradeoff", "tabulate achievable and converse loads over a memory grid");
  common(tradeoff);
  tradeoff->add_option("--grid", config.grid, "grid density g: M = jN/(gK)");
  tradeoff->add_option("--out", config.out, "output path, '-' for stdout");
  tradeoff->add_option("--format", config.format, "csv or json");

  auto* verify = app.add_subcommand("verify", "check the converse against the MAN scheme");
  common(verify);
  verify->add_option("--grid", config.grid, "grid density g: M = jN/(gK)");
  verify->add_option("--out", config.out, "report path, '-' for stdout");

  auto* simulate = app.add_subcommand("simulate", "run placement, delivery and decoding bit-exactly");
  common(simulate);
  simulate->add_option("--scheme", config.scheme, "man or coded-small");
  simulate->add_option("--t", config.t, "MAN parameter t, M = tN/K");
  simulate->add_option("--m", memory_text, "memory M as p/q");
  simulate->add_option("--demands", demands_text, "comma-separated demand vector");
  simulate->add_flag("--all-demands", config.all_demands, "every demand vector in [1:N]^K");
  simulate->add_option("--seed", config.seed, "seed for file contents");
  simulate->add_option("--subfile-bits", config.subfile_bits, "bits per smallest subfile piece");
  simulate->add_option("--format", config.format, "text or json");
  simulate->add_option("--out", config.out, "output path, '-' for stdout");

  auto* graph = app.add_subcommand("graph", "export the index coding side-information graph");
  common(graph);
  graph->add_option("--demands", demands_text, "comma-separated distinct demand vector")->required();
  graph->add_option("--t", config.t, "use the MAN split for t instead of the uniform 2^K split");
  graph->add_option("--u", ordering_text, "list the acyclic set for this user ordering");
  graph->add_flag("--lemma1-sets", config.lemma1_sets, "list the acyclic set for every user ordering");
  graph->add_option("--out", config.out, "output path, '-' for stdout");

  std::vector<const char*> argv{"codedcache"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (!memory_text.empty()) config.memory = Rational::parse(memory_text);
    if (!demands_text.empty()) config.demands = parse_int_list(demands_text);
    if (!ordering_text.empty()) config.ordering = parse_int_list(ordering_text);
  } catch (const std::exception& e) {
    return usage(err, e.what());
  }

  try {
    if (tradeoff->parsed()) return cmd_tradeoff(config, out, err);
    if (verify->parsed()) return cmd_verify(config, out, err);
    if (simulate->parsed()) return cmd_simulate(config, out, err);
    if (graph->parsed()) return cmd_graph(config, out, err);
  } catch (const std::invalid_argument& e) {
    return usage(err, e.what());
  }
  return usage(err, "unknown command");
}

} // namespace codedcache::cli
