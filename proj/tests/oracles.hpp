// Independent reference implementations used by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>
#include <vector>

#include "acmn/topology.hpp"

namespace oracle {

// Connected simple graph: a random spanning tree plus random extra links.
template <class Rng>
acmn::LogicalTopology random_connected_graph(int nodes, int links, Rng& rng) {
  acmn::LogicalTopology t;
  t.name = "random";
  t.node_count = nodes;
  std::vector<acmn::Link> all;
  for (int v = 1; v < nodes; ++v) {
    const int u = static_cast<int>(rng() % static_cast<unsigned long long>(v));
    t.links.push_back(acmn::make_link(u, v));
  }
  for (int a = 0; a < nodes; ++a) {
    for (int b = a + 1; b < nodes; ++b) {
      if (std::find(t.links.begin(), t.links.end(), acmn::Link{a, b}) == t.links.end()) all.push_back({a, b});
    }
  }
  while (static_cast<int>(t.links.size()) < links && !all.empty()) {
    const auto i = static_cast<std::size_t>(rng() % all.size());
    t.links.push_back(all[i]);
    all.erase(all.begin() + static_cast<long>(i));
  }
  std::sort(t.links.begin(), t.links.end());
  return t;
}

struct EnumeratedPath {
  double weight = 0.0;
  std::vector<int> nodes;
};

// Every simple path from src to dst by depth-first search, sorted by
// (weight, node sequence). Weights are summed in path order.
inline std::vector<EnumeratedPath> all_simple_paths(const acmn::LogicalTopology& t, const std::vector<double>& w,
                                                    int src, int dst) {
  std::vector<std::vector<std::pair<int, int>>> adj(t.node_count);
  for (std::size_t i = 0; i < t.links.size(); ++i) {
    adj[t.links[i].a].push_back({t.links[i].b, static_cast<int>(i)});
    adj[t.links[i].b].push_back({t.links[i].a, static_cast<int>(i)});
  }
  std::vector<EnumeratedPath> out;
  std::vector<int> stack{src};
  std::vector<char> on(t.node_count, 0);
  on[src] = 1;
  std::function<void(int, double)> dfs = [&](int u, double acc) {
    if (u == dst) {
      out.push_back({acc, stack});
      return;
    }
    for (auto [v, l] : adj[u]) {
      if (on[v]) continue;
      on[v] = 1;
      stack.push_back(v);
      dfs(v, acc + w[l]);
      stack.pop_back();
      on[v] = 0;
    }
  };
  dfs(src, 0.0);
  std::sort(out.begin(), out.end(), [](const EnumeratedPath& a, const EnumeratedPath& b) {
    return std::tie(a.weight, a.nodes) < std::tie(b.weight, b.nodes);
  });
  return out;
}

// Launch power (W) maximising P / (p_ase + eta P^3) on a uniform dB grid.
inline double grid_search_power(double p_ase, double eta, double step_db = 1e-3) {
  const double centre_dbw = 10.0 * std::log10(std::cbrt(p_ase / eta));
  double best_p = 0.0, best_snr = -1.0;
  for (double dbw = centre_dbw - 15.0; dbw <= centre_dbw + 15.0; dbw += step_db) {
    const double p = std::pow(10.0, dbw / 10.0);
    const double snr = p / (p_ase + eta * p * p * p);
    if (snr > best_snr) {
      best_snr = snr;
      best_p = p;
    }
  }
  return best_p;
}

// Exact test: can the lightpaths (as link lists) be coloured with at most
// `colours` wavelengths so that lightpaths sharing a link differ?
inline bool colourable(const std::vector<std::vector<int>>& routes, int colours) {
  const int n = static_cast<int>(routes.size());
  std::vector<std::vector<int>> conflict(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool shared = false;
      for (int a : routes[i]) {
        if (std::find(routes[j].begin(), routes[j].end(), a) != routes[j].end()) shared = true;
      }
      if (shared) {
        conflict[i].push_back(j);
        conflict[j].push_back(i);
      }
    }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return conflict[a].size() > conflict[b].size(); });
  std::vector<int> colour(n, -1);
  std::function<bool(int)> place = [&](int idx) {
    if (idx == n) return true;
    const int v = order[idx];
    int highest = -1;
    for (int u = 0; u < idx; ++u) highest = std::max(highest, colour[order[u]]);
    // Symmetry breaking: a vertex may open at most one new colour.
    for (int c = 0; c < colours && c <= highest + 1; ++c) {
      bool ok = true;
      for (int u : conflict[v]) {
        if (colour[u] == c) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      colour[v] = c;
      if (place(idx + 1)) return true;
      colour[v] = -1;
    }
    return false;
  };
  return place(0);
}

// Minimum achievable maximum link load when every demand places `copies`
// lightpaths over its candidate routes (given as link lists) and the result
// must be wavelength-colourable with `colours` channels. Returns -1 when no
// assignment exists. `upper` prunes: only solutions strictly below it are
// searched, and `upper` is returned if none exists.
inline int min_max_load(const std::vector<std::vector<std::vector<int>>>& candidates, int link_count, int copies,
                        int colours, int upper = std::numeric_limits<int>::max()) {
  const int demands = static_cast<int>(candidates.size());
  std::vector<int> load(link_count, 0);
  std::vector<std::vector<int>> chosen;
  int best = upper;
  bool found = false;

  // Copies of one demand are interchangeable, so enumerate how many copies
  // use each candidate (nondecreasing candidate index per copy).
  std::function<void(int, int, int, int)> rec = [&](int d, int copy, int min_cand, int cur_max) {
    if (cur_max >= best) return;
    if (d == demands) {
      if (colourable(chosen, colours)) {
        best = cur_max;
        found = true;
      }
      return;
    }
    if (copy == copies) {
      rec(d + 1, 0, 0, cur_max);
      return;
    }
    const auto& cands = candidates[d];
    for (int c = min_cand; c < static_cast<int>(cands.size()); ++c) {
      int m = cur_max;
      for (int l : cands[c]) m = std::max(m, ++load[l]);
      chosen.push_back(cands[c]);
      rec(d, copy + 1, c, m);
      chosen.pop_back();
      for (int l : cands[c]) --load[l];
    }
  };
  rec(0, 0, 0, 0);
  if (found) return best;
  return upper == std::numeric_limits<int>::max() ? -1 : upper;
}

}  // namespace oracle
