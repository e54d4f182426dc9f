#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "codedcache/combinatorics.hpp"
#include "codedcache/rational.hpp"
#include "codedcache/schemes.hpp"

namespace codedcache {

/// Lengths of an uncoded split: lengths[j-1][mask] is |F_{j,W}| in file units
/// for every W in the power set of [1:K].
struct SubfileSplit {
  int files = 0;
  int users = 0;
  std::vector<std::vector<Rational>> lengths;

  const Rational& length(int file, UserSet subset) const {
    return lengths[static_cast<std::size_t>(file - 1)][static_cast<std::size_t>(subset.mask())];
  }

  /// Every file cut into 2^K equal parts.
  static SubfileSplit uniform(int files, int users);
  /// Every file cut into B(K,t) equal parts over the t-subsets, the rest empty.
  static SubfileSplit man(int files, int users, int t);
  /// Lengths read off an uncoded placement. Throws for coded placements.
  static SubfileSplit from_placement(const Placement& p);
};

/// Identity of a side-information node: subfile F_{file,subset} wanted by `requester`.
struct IcNodeKey {
  int file = 0;
  UserSet subset;
  int requester = 0;
  friend auto operator<=>(const IcNodeKey&, const IcNodeKey&) = default;
};

struct IcNode {
  IcNodeKey key;
  Rational length;
};

using NodeSet = std::vector<std::size_t>;

/// Side-information digraph of the index coding problem induced by an uncoded
/// placement and a distinct-demand vector. Edge a -> b iff requester(b) caches node a.
class IndexCodingGraph {
public:
  const std::vector<IcNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  int users() const { return users_; }

  bool has_edge(std::size_t from, std::size_t to) const {
    return from != to && nodes_[from].key.subset.contains(nodes_[to].key.requester);
  }
  const std::vector<std::size_t>& successors(std::size_t v) const { return out_[v]; }
  std::size_t edge_count() const;

  std::optional<std::size_t> find(const IcNodeKey& key) const;
  /// Indices of the given keys. Throws std::out_of_range if a key is not a node.
  NodeSet indices_of(const std::vector<IcNodeKey>& keys) const;

  friend IndexCodingGraph build_graph(const SubfileSplit& split, const DemandVector& d);

private:
  int users_ = 0;
  std::vector<IcNode> nodes_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Nodes are ordered by requester, then by subset mask. Requires distinct demands.
IndexCodingGraph build_graph(const SubfileSplit& split, const DemandVector& d);

/// True iff the subgraph induced by `s` has no directed cycle.
bool is_acyclic(const IndexCodingGraph& g, const NodeSet& s);

/// Acyclic node set for a user ordering u, grouped by level: level i holds
/// F_{d_{u_i},W} for every W inside [1:K] minus {u_1..u_i}.
struct Lemma1Set {
  std::vector<std::vector<IcNodeKey>> levels;
  std::vector<IcNodeKey> flatten() const;
};

Lemma1Set lemma1_set(const DemandVector& d, const Permutation& u);

/// True iff no edge leaves a level-i node towards a node at level <= i.
bool respects_levels(const IndexCodingGraph& g, const Lemma1Set& set);

/// Sum of node lengths; a lower bound on the broadcast length when `s` is acyclic.
/// Throws std::invalid_argument if `s` contains a cycle.
Rational acyclic_bound_value(const IndexCodingGraph& g, const NodeSet& s);

inline constexpr std::size_t kMaxAcyclicSearchNodes = 24;

struct AcyclicSearchResult {
  Rational value;
  NodeSet nodes;
};

/// Heaviest acyclic induced subgraph by branch and bound. Throws
/// std::invalid_argument above kMaxAcyclicSearchNodes nodes.
AcyclicSearchResult max_acyclic_bound(const IndexCodingGraph& g);

/// Text export:
///   nodes <n>
///   <id> <file> <subset_mask> <requester> <length>     (n lines)
///   edges <m>
///   <from> <to>                                         (m lines)
void write_graph(std::ostream& os, const IndexCodingGraph& g);

struct ParsedGraph {
  std::vector<IcNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

ParsedGraph read_graph(std::istream& is);

} // namespace codedcache
