#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acmn/geometry.hpp"
#include "acmn/physlayer.hpp"
#include "acmn/routing.hpp"
#include "acmn/rwa.hpp"
#include "acmn/topology.hpp"

namespace acmn {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Topology file: {"name", "nodes", "links": [[a,b],...], "length_km"?, "spans"?}.
struct TopologyFile {
  LogicalTopology topology;
  std::optional<std::vector<double>> length_km;
  std::optional<std::vector<int>> spans;
};

nlohmann::json topology_to_json(const LogicalTopology& t);
nlohmann::json physical_to_json(const PhysicalTopology& pt);
TopologyFile topology_from_json(const nlohmann::json& j);
TopologyFile read_topology_file(const std::filesystem::path& path);

nlohmann::json fiber_to_json(const FiberParams& p);
nlohmann::json grid_to_json(const ChannelGrid& g);
/// Starts from `base` and overrides the keys present in `j`; unknown keys
/// raise ConfigError.
FiberParams fiber_from_json(const nlohmann::json& j, FiberParams base = {});
ChannelGrid grid_from_json(const nlohmann::json& j, ChannelGrid base = {});

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Fixed-precision number formatting shared by every emitted table.
std::string format_number(double v);

/// Solution table: pair, copy, wavelength, node sequence, NSR, capacity_Gbps.
std::string solution_to_tsv(const RwaSolution& sol);
/// Rebuilds assignments from a solution table. Link indices are resolved
/// against `t`; routes over non-existent links are kept with index -1 so
/// that the validator reports them.
RwaSolution solution_from_tsv(const std::string& text, const LogicalTopology& t, int wavelengths);
/// Smallest topology containing every hop of the table's routes.
LogicalTopology topology_from_solution_tsv(const std::string& text);

nlohmann::json solution_summary(const RwaSolution& sol);

/// Candidate dump: pair, rank, node sequence, NSR, capacity_Gbps, kept flag.
std::string candidates_to_tsv(const std::vector<std::vector<CandidatePath>>& ranked,
                              const std::vector<PathSet>& kept);

}  // namespace acmn
