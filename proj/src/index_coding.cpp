#include "codedcache/index_coding.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace codedcache {

SubfileSplit SubfileSplit::uniform(int files, int users) {
  SubfileSplit s{files, users, {}};
  const std::size_t sets = std::size_t{1} << users;
  s.lengths.assign(static_cast<std::size_t>(files),
                   std::vector<Rational>(sets, Rational(1, static_cast<std::int64_t>(sets))));
  return s;
}

SubfileSplit SubfileSplit::man(int files, int users, int t) {
  if (t < 0 || t > users) throw std::invalid_argument("t outside [0:K]");
  SubfileSplit s{files, users, {}};
  s.lengths.assign(static_cast<std::size_t>(files), std::vector<Rational>(std::size_t{1} << users));
  const Rational piece(1, static_cast<std::int64_t>(binom(users, t)));
  for (auto& row : s.lengths) {
    for (UserSet w : subsets_of(UserSet::full(users), t)) row[static_cast<std::size_t>(w.mask())] = piece;
  }
  return s;
}

SubfileSplit SubfileSplit::from_placement(const Placement& p) {
  if (!p.uncoded) throw std::invalid_argument("index coding view needs an uncoded placement");
  SubfileSplit s{p.files, p.users, {}};
  s.lengths.assign(static_cast<std::size_t>(p.files), std::vector<Rational>(std::size_t{1} << p.users));
  for (const auto& [id, sub] : p.subfiles) {
    s.lengths[static_cast<std::size_t>(id.file - 1)][static_cast<std::size_t>(id.label.mask())] += sub.length;
  }
  return s;
}

std::size_t IndexCodingGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& succ : out_) total += succ.size();
  return total;
}

std::optional<std::size_t> IndexCodingGraph::find(const IcNodeKey& key) const {
  // nodes_ is sorted by (requester, subset), which is unique under distinct demands
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), key, [](const IcNode& n, const IcNodeKey& k) {
    return std::pair(n.key.requester, n.key.subset) < std::pair(k.requester, k.subset);
  });
  if (it == nodes_.end() || it->key != key) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

NodeSet IndexCodingGraph::indices_of(const std::vector<IcNodeKey>& keys) const {
  NodeSet out;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    const auto idx = find(k);
    if (!idx) {
      throw std::out_of_range("no node F_{" + std::to_string(k.file) + "," + k.subset.label() + "} for user " +
                              std::to_string(k.requester));
    }
    out.push_back(*idx);
  }
  return out;
}

IndexCodingGraph build_graph(const SubfileSplit& split, const DemandVector& d) {
  validate_demands(d, split.files, split.users, true);
  const int K = split.users;
  IndexCodingGraph g;
  g.users_ = K;
  for (int k = 1; k <= K; ++k) {
    const int file = d[static_cast<std::size_t>(k - 1)];
    for (UserSet w : subsets_of(UserSet::full(K).without(k))) {
      g.nodes_.push_back(IcNode{IcNodeKey{file, w, k}, split.length(file, w)});
    }
  }
  g.out_.resize(g.nodes_.size());
  for (std::size_t a = 0; a < g.nodes_.size(); ++a) {
    for (std::size_t b = 0; b < g.nodes_.size(); ++b) {
      if (g.has_edge(a, b)) g.out_[a].push_back(b);
    }
  }
  return g;
}

bool is_acyclic(const IndexCodingGraph& g, const NodeSet& s) {
  enum : char { kOutside, kWhite, kGrey, kBlack };
  std::vector<char> state(g.size(), kOutside);
  for (std::size_t v : s) {
    if (v >= g.size()) throw std::out_of_range("node index out of range");
    state[v] = kWhite;
  }
  // (node, next successor position)
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root : s) {
    if (state[root] != kWhite) continue;
    state[root] = kGrey;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      const auto& succ = g.successors(v);
      if (pos == succ.size()) {
        state[v] = kBlack;
        stack.pop_back();
        continue;
      }
      const std::size_t w = succ[pos++];
      if (state[w] == kGrey) return false;
      if (state[w] == kWhite) {
        state[w] = kGrey;
        stack.emplace_back(w, 0);
      }
    }
  }
  return true;
}

std::vector<IcNodeKey> Lemma1Set::flatten() const {
  std::vector<IcNodeKey> out;
  for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
  return out;
}

Lemma1Set lemma1_set(const DemandVector& d, const Permutation& u) {
  const int K = static_cast<int>(d.size());
  if (static_cast<int>(u.size()) != K) throw std::invalid_argument("permutation length differs from K");
  {
    std::vector<int> sorted = u;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < K; ++i) {
      if (sorted[static_cast<std::size_t>(i)] != i + 1) throw std::invalid_argument("u is not a permutation of [1:K]");
    }
  }
  std::vector<int> sorted_d = d;
  std::sort(sorted_d.begin(), sorted_d.end());
  if (std::adjacent_find(sorted_d.begin(), sorted_d.end()) != sorted_d.end()) {
    throw std::invalid_argument("demands must be pairwise distinct");
  }

  Lemma1Set set;
  UserSet remaining = UserSet::full(K);
  for (int user : u) {
    remaining = remaining.without(user);
    std::vector<IcNodeKey> level;
    for (UserSet w : subsets_of(remaining)) level.push_back(IcNodeKey{d[static_cast<std::size_t>(user - 1)], w, user});
    set.levels.push_back(std::move(level));
  }
  return set;
}

bool respects_levels(const IndexCodingGraph& g, const Lemma1Set& set) {
  std::vector<std::pair<std::size_t, std::size_t>> placed; // (node, level)
  for (std::size_t lvl = 0; lvl < set.levels.size(); ++lvl) {
    for (std::size_t v : g.indices_of(set.levels[lvl])) placed.emplace_back(v, lvl);
  }
  for (const auto& [a, la] : placed) {
    for (const auto& [b, lb] : placed) {
      if (lb <= la && g.has_edge(a, b)) return false;
    }
  }
  return true;
}

Rational acyclic_bound_value(const IndexCodingGraph& g, const NodeSet& s) {
  if (!is_acyclic(g, s)) throw std::invalid_argument("node set contains a directed cycle");
  Rational total;
  for (std::size_t v : s) total += g.nodes()[v].length;
  return total;
}

namespace {

class AcyclicSearch {
public:
  explicit AcyclicSearch(const IndexCodingGraph& g) : g_(g), n_(g.size()), succ_(n_, 0), suffix_(n_ + 1) {
    for (std::size_t v = 0; v < n_; ++v) {
      for (std::size_t w : g.successors(v)) succ_[v] |= 1U << w;
    }
    for (std::size_t v = n_; v-- > 0;) suffix_[v] = suffix_[v + 1] + g.nodes()[v].length;
  }

  AcyclicSearchResult run() {
    branch(0, 0, Rational(0));
    AcyclicSearchResult result{best_, {}};
    for (std::size_t v = 0; v < n_; ++v) {
      if ((best_set_ >> v) & 1U) result.nodes.push_back(v);
    }
    return result;
  }

private:
  // Adding v to an acyclic set closes a cycle iff v reaches itself inside set + v.
  bool closes_cycle(std::uint32_t set, std::size_t v) const {
    const std::uint32_t within = set | (1U << v);
    std::uint32_t seen = 0;
    std::uint32_t frontier = succ_[v] & within;
    while (frontier != 0) {
      if ((frontier >> v) & 1U) return true;
      seen |= frontier;
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= succ_[static_cast<std::size_t>(std::countr_zero(f))];
      frontier = next & within & ~seen;
    }
    return false;
  }

  void branch(std::size_t v, std::uint32_t set, const Rational& value) {
    if (found_ && value + suffix_[v] <= best_) return;
    if (v == n_) {
      best_ = value;
      best_set_ = set;
      found_ = true;
      return;
    }
    // supersets of a cyclic set stay cyclic, so only extend acyclic sets
    if (!closes_cycle(set, v)) branch(v + 1, set | (1U << v), value + g_.nodes()[v].length);
    branch(v + 1, set, value);
  }

  const IndexCodingGraph& g_;
  std::size_t n_;
  std::vector<std::uint32_t> succ_;
  std::vector<Rational> suffix_;
  Rational best_;
  std::uint32_t best_set_ = 0;
  bool found_ = false;
};

} // namespace

AcyclicSearchResult max_acyclic_bound(const IndexCodingGraph& g) {
  if (g.size() > kMaxAcyclicSearchNodes) {
    throw std::invalid_argument("acyclic-set search limited to " + std::to_string(kMaxAcyclicSearchNodes) +
                                " nodes, graph has " + std::to_string(g.size()));
  }
  return AcyclicSearch(g).run();
}

void write_graph(std::ostream& os, const IndexCodingGraph& g) {
  os << "nodes " << g.size() << '\n';
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& n = g.nodes()[v];
    os << v << ' ' << n.key.file << ' ' << n.key.subset.mask() << ' ' << n.key.requester << ' ' << n.length.str()
       << '\n';
  }
  os << "edges " << g.edge_count() << '\n';
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t w : g.successors(v)) os << v << ' ' << w << '\n';
  }
}

ParsedGraph read_graph(std::istream& is) {
  ParsedGraph out;
  std::string tag;
  std::size_t count = 0;
  if (!(is >> tag >> count) || tag != "nodes") throw std::runtime_error("graph text: expected 'nodes <n>'");
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t id = 0;
    std::uint64_t mask = 0;
    std::string length;
    IcNode node;
    if (!(is >> id >> node.key.file >> mask >> node.key.requester >> length) || id != i) {
      throw std::runtime_error("graph text: malformed node line " + std::to_string(i));
    }
    node.key.subset = UserSet(mask);
    node.length = Rational::parse(length);
    out.nodes.push_back(node);
  }
  if (!(is >> tag >> count) || tag != "edges") throw std::runtime_error("graph text: expected 'edges <m>'");
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t a = 0;
    std::size_t b = 0;
    if (!(is >> a >> b) || a >= out.nodes.size() || b >= out.nodes.size()) {
      throw std::runtime_error("graph text: malformed edge line " + std::to_string(i));
    }
    out.edges.emplace_back(a, b);
  }
  return out;
}

} // namespace codedcache
