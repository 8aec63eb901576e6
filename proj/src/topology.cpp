#include "acmn/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "acmn/seeding.hpp"

namespace acmn {

std::vector<int> LogicalTopology::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(std::max(node_count, 0)), 0);
  for (const auto& l : links) {
    if (l.a >= 0 && l.a < node_count) ++deg[l.a];
    if (l.b >= 0 && l.b < node_count) ++deg[l.b];
  }
  return deg;
}

Adjacency::Adjacency(const LogicalTopology& t) : nodes(static_cast<std::size_t>(t.node_count)) {
  for (std::size_t i = 0; i < t.links.size(); ++i) {
    const auto& l = t.links[i];
    nodes[l.a].push_back({l.b, static_cast<int>(i)});
    nodes[l.b].push_back({l.a, static_cast<int>(i)});
  }
  for (auto& n : nodes) {
    std::sort(n.begin(), n.end(), [](const Entry& x, const Entry& y) { return x.neighbour < y.neighbour; });
  }
}

Link make_link(int u, int v) { return u < v ? Link{u, v} : Link{v, u}; }

bool is_connected(const LogicalTopology& t) {
  if (t.node_count <= 1) return true;
  std::vector<int> parent(static_cast<std::size_t>(t.node_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = t.node_count;
  for (const auto& l : t.links) {
    int ra = find(l.a), rb = find(l.b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

std::optional<std::string> check_topology(const LogicalTopology& t, int min_degree) {
  if (t.node_count < 2) return "topology needs at least 2 nodes";
  std::set<Link> seen;
  for (const auto& l : t.links) {
    if (l.a < 0 || l.b < 0 || l.a >= t.node_count || l.b >= t.node_count) {
      return "link endpoint out of range";
    }
    if (l.a == l.b) return "self-loop on node " + std::to_string(l.a);
    if (l.a > l.b) return "link not in canonical (a < b) order";
    if (!seen.insert(l).second) {
      return "parallel link " + std::to_string(l.a) + "-" + std::to_string(l.b);
    }
  }
  if (!is_connected(t)) return "topology is disconnected";
  const auto deg = t.degrees();
  for (int n = 0; n < t.node_count; ++n) {
    if (deg[n] < min_degree) {
      return "node " + std::to_string(n) + " has degree " + std::to_string(deg[n]);
    }
  }
  return std::nullopt;
}

void validate_topology(const LogicalTopology& t, int min_degree) {
  if (auto err = check_topology(t, min_degree)) throw TopologyError(*err);
}

std::vector<Link> canonical_links(const LogicalTopology& t) {
  std::vector<Link> out;
  out.reserve(t.links.size());
  for (const auto& l : t.links) out.push_back(make_link(l.a, l.b));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t canonical_hash(const LogicalTopology& t) {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(t.node_count));
  for (const auto& l : canonical_links(t)) {
    h = splitmix64(h ^ (static_cast<std::uint64_t>(l.a) << 32 | static_cast<std::uint32_t>(l.b)));
  }
  return h;
}

std::vector<NodePair> node_pairs(int node_count) {
  std::vector<NodePair> out;
  if (node_count < 2) return out;
  out.reserve(static_cast<std::size_t>(node_count) * (node_count - 1) / 2);
  for (int a = 0; a < node_count; ++a) {
    for (int b = a + 1; b < node_count; ++b) out.push_back({a, b});
  }
  return out;
}

std::vector<NodePair> node_pairs(const LogicalTopology& t) { return node_pairs(t.node_count); }

int pair_index(NodePair p, int n) {
  // Pairs with first index < a precede p: sum_{i<a} (n-1-i).
  return p.a * (2 * n - p.a - 1) / 2 + (p.b - p.a - 1);
}

ReferenceNetwork load_nsfnet() {
  // Nodes: 0 Seattle, 1 Palo Alto, 2 San Diego, 3 Salt Lake City, 4 Boulder,
  // 5 Houston, 6 Lincoln, 7 Champaign, 8 Pittsburgh, 9 Atlanta, 10 Ann Arbor,
  // 11 Ithaca, 12 Princeton, 13 College Park.
  // Distances are great-circle estimates adjusted so that the mean link
  // length is 1463 km, the mean node-pair distance 3070 km and D = 2.13.
  static const std::vector<std::pair<Link, double>> kLinks = {
      {{0, 1}, 1474},  {{0, 2}, 2246},   {{0, 7}, 3338},  {{1, 2}, 1034},  {{1, 3}, 1377},
      {{2, 5}, 3354},  {{3, 4}, 757},    {{3, 10}, 3323}, {{4, 5}, 1822},  {{4, 6}, 986},
      {{5, 9}, 1541},  {{5, 13}, 2662},  {{6, 7}, 960},   {{7, 8}, 911},   {{8, 9}, 1130},
      {{8, 11}, 515},  {{8, 12}, 585},   {{10, 11}, 805}, {{10, 12}, 1051}, {{11, 13}, 523},
      {{12, 13}, 328},
  };
  ReferenceNetwork net;
  net.topology.name = "NSFNET";
  net.topology.node_count = 14;
  for (const auto& [link, km] : kLinks) {
    net.topology.links.push_back(link);
    net.link_km.push_back(km);
  }
  return net;
}

namespace {

bool has_link(const std::vector<Link>& links, Link l) {
  return std::find(links.begin(), links.end(), l) != links.end();
}

LogicalTopology generate_by_swaps(RandomEngine& rng, const GeneratorOptions& opts) {
  LogicalTopology t = load_nsfnet().topology;
  std::uniform_int_distribution<std::size_t> pick(0, t.links.size() - 1);
  std::bernoulli_distribution flip(0.5);

  int done = 0;
  int attempts = 0;
  while (done < opts.swap_count) {
    if (++attempts > opts.max_retries) {
      throw TopologyError("edge-swap generator exhausted its retry budget after " +
                          std::to_string(done) + " swaps");
    }
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const Link e1 = t.links[i];
    Link e2 = t.links[j];
    int a = e1.a, b = e1.b, c = e2.a, d = e2.b;
    if (flip(rng)) std::swap(c, d);
    // (a,b),(c,d) -> (a,d),(c,b)
    if (a == d || c == b) continue;
    const Link n1 = make_link(a, d), n2 = make_link(c, b);
    if (n1 == n2 || has_link(t.links, n1) || has_link(t.links, n2)) continue;
    t.links[i] = n1;
    t.links[j] = n2;
    if (!is_connected(t)) {
      t.links[i] = e1;
      t.links[j] = e2;
      continue;
    }
    ++done;
  }
  t.links = canonical_links(t);
  return t;
}

LogicalTopology generate_uniform(RandomEngine& rng, const GeneratorOptions& opts) {
  const auto all = node_pairs(opts.node_count);
  if (opts.link_count > static_cast<int>(all.size())) {
    throw TopologyError("link count exceeds the number of node pairs");
  }
  std::vector<std::size_t> order(all.size());
  LogicalTopology t;
  t.node_count = opts.node_count;
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    t.links.clear();
    for (int i = 0; i < opts.link_count; ++i) {
      const auto& p = all[order[i]];
      t.links.push_back({p.a, p.b});
    }
    t.links = canonical_links(t);
    if (!check_topology(t, opts.min_degree)) return t;
  }
  throw TopologyError("uniform generator found no valid topology within the retry budget");
}

}  // namespace

LogicalTopology generate_acmn(std::uint64_t seed, const GeneratorOptions& opts) {
  auto rng = make_engine(seed);
  LogicalTopology t = opts.mode == GeneratorMode::EdgeSwap ? generate_by_swaps(rng, opts)
                                                           : generate_uniform(rng, opts);
  t.name = "acmn-" + std::to_string(seed);
  validate_topology(t, opts.min_degree);
  return t;
}

}  // namespace acmn
