#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "acmn/topology.hpp"

namespace acmn {

class PhysicalLayer;
struct PhysicalTopology;

/// Simple path between a node pair with its NSR and planning capacity.
struct CandidatePath {
  std::vector<int> nodes;
  std::vector<int> links;
  double nsr = 0.0;
  double capacity_bps = 0.0;

  std::size_t hops() const { return links.size(); }
};

/// Equal-cost candidates for one node pair after relaxation filtering,
/// sorted by descending capacity.
struct PathSet {
  NodePair pair;
  std::vector<CandidatePath> paths;
  double relaxation = 1.0;
};

class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict weak ordering on paths: total weight (equal within a relative
/// 1e-12), then lexicographic node sequence.
bool path_less(double weight_a, const std::vector<int>& nodes_a, double weight_b, const std::vector<int>& nodes_b);

/// Sum of link weights along `links`, accumulated in path order.
double path_weight(std::span<const int> links, std::span<const double> link_weights);

/// Yen's k shortest loopless paths from src to dst, nondecreasing in
/// weight with lexicographic tie-breaking. Returns fewer than k paths when
/// the graph has fewer. Throws NoPathError if dst is unreachable.
std::vector<CandidatePath> k_shortest_paths(const LogicalTopology& t, std::span<const double> link_weights, int src,
                                            int dst, int k);

/// Planning link weights: full-load worst-channel NSR times span count.
std::vector<double> planning_link_nsr(const PhysicalTopology& pt, const PhysicalLayer& phy);

/// k minimum-NSR paths for `pair`, each annotated with its Shannon capacity.
std::vector<CandidatePath> k_shortest_nsr_paths(const PhysicalTopology& pt, std::span<const double> link_nsr,
                                                NodePair pair, int k, const PhysicalLayer& phy);

/// Keeps candidates with capacity >= x * max capacity. Never empty.
PathSet relax_filter(NodePair pair, const std::vector<CandidatePath>& ranked, double x);

}  // namespace acmn
