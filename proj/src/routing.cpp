#include "acmn/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "acmn/geometry.hpp"
#include "acmn/physlayer.hpp"

namespace acmn {

namespace {

constexpr double kRelTol = 1e-12;

bool weights_equal(double a, double b) {
  return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b));
}

struct Label {
  double weight = std::numeric_limits<double>::infinity();
  std::vector<int> nodes;
  std::vector<int> links;
  bool reached = false;
};

bool label_less(const Label& x, const Label& y) {
  if (!y.reached) return x.reached;
  if (!x.reached) return false;
  return path_less(x.weight, x.nodes, y.weight, y.nodes);
}

// Lexicographically smallest minimum-weight path from the last node of
// `root` to dst, avoiding banned nodes and links. The label weight starts
// at the root weight so that sums accumulate in path order.
std::optional<Label> constrained_shortest(const Adjacency& adj, std::span<const double> w, const Label& root,
                                          int dst, const std::vector<char>& banned_node,
                                          const std::vector<char>& banned_link) {
  const std::size_t n = adj.nodes.size();
  std::vector<Label> best(n);
  std::vector<char> settled(n, 0);
  const int src = root.nodes.back();
  best[src] = root;
  best[src].reached = true;

  for (;;) {
    int u = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (settled[i] || !best[i].reached) continue;
      if (u < 0 || label_less(best[i], best[u])) u = static_cast<int>(i);
    }
    if (u < 0) return std::nullopt;
    if (u == dst) return best[u];
    settled[u] = 1;
    for (const auto& e : adj.nodes[u]) {
      if (settled[e.neighbour] || banned_node[e.neighbour] || banned_link[e.link]) continue;
      Label cand;
      cand.reached = true;
      cand.weight = best[u].weight + w[e.link];
      cand.nodes = best[u].nodes;
      cand.nodes.push_back(e.neighbour);
      cand.links = best[u].links;
      cand.links.push_back(e.link);
      if (label_less(cand, best[e.neighbour])) best[e.neighbour] = std::move(cand);
    }
  }
}

}  // namespace

bool path_less(double weight_a, const std::vector<int>& nodes_a, double weight_b, const std::vector<int>& nodes_b) {
  if (!weights_equal(weight_a, weight_b)) return weight_a < weight_b;
  return nodes_a < nodes_b;
}

double path_weight(std::span<const int> links, std::span<const double> link_weights) {
  double sum = 0.0;
  for (int l : links) sum += link_weights[l];
  return sum;
}

std::vector<CandidatePath> k_shortest_paths(const LogicalTopology& t, std::span<const double> w, int src, int dst,
                                            int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (w.size() != t.links.size()) throw std::invalid_argument("one weight per link is required");
  if (src == dst) throw std::invalid_argument("source and destination coincide");
  const Adjacency adj(t);
  const std::size_t n = static_cast<std::size_t>(t.node_count);

  std::vector<Label> accepted;
  std::vector<Label> pending;
  auto known = [&](const std::vector<int>& nodes) {
    auto same = [&](const Label& l) { return l.nodes == nodes; };
    return std::any_of(accepted.begin(), accepted.end(), same) || std::any_of(pending.begin(), pending.end(), same);
  };

  {
    Label root;
    root.weight = 0.0;
    root.nodes = {src};
    auto first = constrained_shortest(adj, w, root, dst, std::vector<char>(n, 0),
                                      std::vector<char>(t.links.size(), 0));
    if (!first) {
      throw NoPathError("no path between nodes " + std::to_string(src) + " and " + std::to_string(dst));
    }
    accepted.push_back(std::move(*first));
  }

  while (static_cast<int>(accepted.size()) < k) {
    const Label prev = accepted.back();
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      std::vector<char> banned_node(n, 0);
      std::vector<char> banned_link(t.links.size(), 0);
      Label root;
      root.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      root.links.assign(prev.links.begin(), prev.links.begin() + static_cast<std::ptrdiff_t>(i));
      root.weight = path_weight(root.links, w);
      for (const auto& p : accepted) {
        if (p.nodes.size() > i + 1 && std::equal(root.nodes.begin(), root.nodes.end(), p.nodes.begin())) {
          banned_link[p.links[i]] = 1;
        }
      }
      for (std::size_t j = 0; j < i; ++j) banned_node[root.nodes[j]] = 1;

      auto spur = constrained_shortest(adj, w, root, dst, banned_node, banned_link);
      if (spur && !known(spur->nodes)) pending.push_back(std::move(*spur));
    }
    if (pending.empty()) break;
    auto best = std::min_element(pending.begin(), pending.end(), label_less);
    accepted.push_back(std::move(*best));
    pending.erase(best);
  }

  std::vector<CandidatePath> out;
  out.reserve(accepted.size());
  for (auto& l : accepted) {
    CandidatePath p;
    p.nsr = path_weight(l.links, w);
    p.nodes = std::move(l.nodes);
    p.links = std::move(l.links);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> planning_link_nsr(const PhysicalTopology& pt, const PhysicalLayer& phy) {
  std::vector<double> w;
  w.reserve(pt.link_spans.size());
  for (int spans : pt.link_spans) w.push_back(spans * phy.full_load_nsr_per_span());
  return w;
}

std::vector<CandidatePath> k_shortest_nsr_paths(const PhysicalTopology& pt, std::span<const double> link_nsr,
                                                NodePair pair, int k, const PhysicalLayer& phy) {
  auto paths = k_shortest_paths(pt.logical, link_nsr, pair.a, pair.b, k);
  for (auto& p : paths) p.capacity_bps = phy.capacity(p.nsr);
  return paths;
}

PathSet relax_filter(NodePair pair, const std::vector<CandidatePath>& ranked, double x) {
  if (ranked.empty()) throw std::invalid_argument("relaxation needs at least one candidate path");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("relaxation x must lie in [0, 1]");
  double c_max = 0.0;
  for (const auto& p : ranked) c_max = std::max(c_max, p.capacity_bps);
  const double threshold = x * c_max * (1.0 - kRelTol);
  PathSet set;
  set.pair = pair;
  set.relaxation = x;
  for (const auto& p : ranked) {
    if (p.capacity_bps >= threshold) set.paths.push_back(p);
  }
  // Ranked by nondecreasing NSR, hence already by nonincreasing capacity.
  return set;
}

}  // namespace acmn
