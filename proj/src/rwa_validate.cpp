#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "acmn/rwa.hpp"

namespace acmn {

ValidationReport validate_solution(const RwaSolution& sol, const LogicalTopology& t) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  const auto pairs = node_pairs(t);
  std::map<NodePair, int> per_pair;
  std::set<std::pair<int, int>> used;  // (link, wavelength)
  std::vector<int> occupancy(t.links.size(), 0);

  for (const auto& a : sol.assignments) {
    const std::string tag = "lightpath " + std::to_string(a.pair.a) + "-" + std::to_string(a.pair.b) + "#" +
                            std::to_string(a.copy);
    ++per_pair[a.pair];
    if (a.wavelength < 0 || a.wavelength >= sol.wavelengths) fail(tag + ": wavelength out of band");
    if (a.nodes.size() < 2 || a.links.size() + 1 != a.nodes.size()) {
      fail(tag + ": malformed route");
      continue;
    }
    const int lo = std::min(a.nodes.front(), a.nodes.back());
    const int hi = std::max(a.nodes.front(), a.nodes.back());
    if (lo != a.pair.a || hi != a.pair.b) fail(tag + ": route does not connect its node pair");
    std::set<int> visited(a.nodes.begin(), a.nodes.end());
    if (visited.size() != a.nodes.size()) fail(tag + ": route revisits a node");
    for (std::size_t i = 0; i < a.links.size(); ++i) {
      const int l = a.links[i];
      if (l < 0 || l >= static_cast<int>(t.links.size())) {
        fail(tag + ": unknown link");
        continue;
      }
      if (t.links[l] != make_link(a.nodes[i], a.nodes[i + 1])) fail(tag + ": route is not contiguous");
      if (!used.insert({l, a.wavelength}).second) {
        fail(tag + ": wavelength " + std::to_string(a.wavelength) + " collides on link " + std::to_string(l));
      }
      ++occupancy[l];
    }
  }

  for (const auto& p : pairs) {
    const auto it = per_pair.find(p);
    const int n = it == per_pair.end() ? 0 : it->second;
    if (n != sol.n_lambda) {
      fail("pair " + std::to_string(p.a) + "-" + std::to_string(p.b) + " carries " + std::to_string(n) +
           " lightpaths, expected " + std::to_string(sol.n_lambda));
    }
  }
  if (per_pair.size() > pairs.size()) fail("solution contains pairs outside the topology");

  for (std::size_t l = 0; l < occupancy.size(); ++l) {
    if (occupancy[l] > sol.wavelengths) fail("link " + std::to_string(l) + " exceeds the band");
    report.max_link_occupancy = std::max(report.max_link_occupancy, occupancy[l]);
    if (!sol.link_channels.empty() && l < sol.link_channels.size() &&
        static_cast<int>(sol.link_channels[l].size()) != occupancy[l]) {
      fail("recorded occupancy of link " + std::to_string(l) + " disagrees with the routes");
    }
  }
  if (report.max_link_occupancy != sol.max_link_occupancy) fail("reported maximum occupancy is wrong");

  double total = 0.0;
  for (const auto& a : sol.assignments) total += a.capacity_bps;
  if (std::abs(total - sol.total_capacity_bps) > 1e-9 * std::max(1.0, std::abs(total)) &&
      sol.total_capacity_bps != 0.0) {
    fail("total capacity is not the sum of lightpath capacities");
  }
  return report;
}

}  // namespace acmn
