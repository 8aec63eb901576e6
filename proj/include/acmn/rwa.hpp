#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acmn/routing.hpp"
#include "acmn/topology.hpp"

namespace acmn {

class PhysicalLayer;
struct PhysicalTopology;

/// One node pair and its equal-cost candidate routes.
using Demand = PathSet;

struct LightpathAssignment {
  NodePair pair;
  int copy = 0;
  int wavelength = 0;
  std::vector<int> nodes;
  std::vector<int> links;
  double nsr = 0.0;
  double capacity_bps = 0.0;
};

struct RwaSolution {
  int n_lambda = 0;
  int wavelengths = 0;
  std::vector<LightpathAssignment> assignments;
  /// Occupied wavelength indices per link, sorted.
  std::vector<std::vector<int>> link_channels;
  int max_link_occupancy = 0;
  long total_occupancy = 0;
  double total_capacity_bps = 0.0;
  double average_capacity_bps = 0.0;
};

struct RwaOptions {
  int wavelengths = 156;
  int restarts = 8;
  std::uint64_t seed = 0;
};

/// Places n_lambda lightpaths for every demand with wavelength continuity,
/// minimising the maximum link occupancy, then total occupancy. Unit
/// requests are ordered fewest-candidates first, then highest shortest-path
/// NSR; each takes the (route, wavelength) with the smallest resulting
/// occupancy, lowest wavelength on ties. Restart 0 uses that order, the
/// remaining restarts seeded permutations. Returns nullopt if no restart
/// places every request.
std::optional<RwaSolution> assign_for_lambda(const std::vector<Demand>& demands, int link_count, int n_lambda,
                                             const RwaOptions& opts = {});

/// Largest N for which assign_for_lambda succeeds, incrementing from 1.
/// Returns nullopt if even N = 1 fails.
std::optional<RwaSolution> maximize_lambda(const std::vector<Demand>& demands, int link_count,
                                           const RwaOptions& opts = {});

/// Recomputes per-link NSR under the solution's actual loading and fills
/// per-lightpath NSR, capacity and the totals.
RwaSolution final_throughput(RwaSolution solution, const PhysicalTopology& pt, const PhysicalLayer& phy);

struct ValidationReport {
  std::vector<std::string> violations;
  int max_link_occupancy = 0;
  bool ok() const { return violations.empty(); }
};

/// Checks a solution using only its assignment list and the topology:
/// routes are contiguous simple paths between their pair, no
/// (link, wavelength) collisions, occupancy within the band, exactly
/// n_lambda lightpaths for each of the topology's node pairs, and the
/// recorded occupancy bookkeeping.
ValidationReport validate_solution(const RwaSolution& solution, const LogicalTopology& t);

}  // namespace acmn
