#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace acmn {

/// Undirected link between two node indices, stored with a < b.
struct Link {
  int a = 0;
  int b = 0;

  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

/// Canonical unordered node pair, a < b.
struct NodePair {
  int a = 0;
  int b = 0;

  friend bool operator==(const NodePair&, const NodePair&) = default;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Undirected simple graph used as the logical layer of a mesh network.
struct LogicalTopology {
  std::string name;
  int node_count = 0;
  std::vector<Link> links;

  std::size_t link_count() const { return links.size(); }
  std::vector<int> degrees() const;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neighbour lists with the link index of each incident link, sorted by
/// neighbour index.
struct Adjacency {
  struct Entry {
    int neighbour;
    int link;
  };
  std::vector<std::vector<Entry>> nodes;

  explicit Adjacency(const LogicalTopology& t);
};

Link make_link(int u, int v);
bool is_connected(const LogicalTopology& t);

/// Returns a description of the first violated invariant, or nullopt.
/// `min_degree` is 2 for survivable mesh members.
std::optional<std::string> check_topology(const LogicalTopology& t, int min_degree = 2);

/// Throws TopologyError if check_topology reports a violation.
void validate_topology(const LogicalTopology& t, int min_degree = 2);

/// Sorted edge list; two topologies with equal canonical forms are the same graph.
std::vector<Link> canonical_links(const LogicalTopology& t);
std::uint64_t canonical_hash(const LogicalTopology& t);

std::vector<NodePair> node_pairs(const LogicalTopology& t);
std::vector<NodePair> node_pairs(int node_count);

/// Index of `p` within node_pairs(n).
int pair_index(NodePair p, int node_count);

struct ReferenceNetwork {
  LogicalTopology topology;
  std::vector<double> link_km;
};

/// 14-node, 21-link NSFNET with reference link distances in km.
ReferenceNetwork load_nsfnet();

enum class GeneratorMode { EdgeSwap, UniformRandom };

struct GeneratorOptions {
  GeneratorMode mode = GeneratorMode::EdgeSwap;
  int swap_count = 100;
  int node_count = 14;  // UniformRandom only; EdgeSwap inherits NSFNET sizes
  int link_count = 21;
  int min_degree = 2;
  int max_retries = 100000;
};

/// Seeded ACMN ensemble member. EdgeSwap applies degree-preserving double
/// edge swaps to NSFNET; UniformRandom draws edge sets until the
/// connectivity and degree constraints hold. Throws TopologyError when the
/// retry budget is exhausted.
LogicalTopology generate_acmn(std::uint64_t seed, const GeneratorOptions& opts = {});

}  // namespace acmn
