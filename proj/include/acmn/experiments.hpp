#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acmn/analytics.hpp"
#include "acmn/geometry.hpp"
#include "acmn/physlayer.hpp"
#include "acmn/rwa.hpp"
#include "acmn/topology.hpp"

namespace acmn {

enum class SweepAxis { MeanLinkKm, NormalizedDiameter };

struct SweepConfig {
  int topologies = 20;
  int realisations = 10;
  std::vector<double> x_grid{0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.00};
  /// Mean link distances (km) or D targets depending on the sweep.
  std::vector<double> axis_values;
  std::uint64_t master_seed = 1;
  int k = 10;
  int wavelengths = 156;
  int restarts = 8;
  FiberParams fiber;
  ChannelGrid grid;
  GeneratorOptions generator;
  /// "acmn": generated topologies; "nsfnet": NSFNET for every topology slot.
  std::string ensemble = "acmn";
  /// "kde": distances drawn per realisation; "embedded": NSFNET's own
  /// distances (nsfnet ensemble only).
  std::string distances = "kde";
  double ellipticity_tolerance = 0.02;
  double mean_pair_km = 3070.0;
  long ellipticity_max_attempts = 100000;
  /// Solve failures tolerated before the sweep reports failure.
  int infeasible_budget = 0;
  /// 0 selects ACMN_WORKERS or the hardware concurrency.
  int workers = 0;
};

SweepConfig default_sweep_config(SweepAxis axis);
/// Overrides the defaults with the keys of `j`. Unknown keys and invalid
/// values raise ConfigError.
SweepConfig sweep_config_from_json(const nlohmann::json& j, SweepAxis axis);
nlohmann::json sweep_config_to_json(const SweepConfig& cfg);
void check_sweep_config(const SweepConfig& cfg, SweepAxis axis);

struct XOutcome {
  double x = 0.0;
  int n_lambda = 0;
  double total_bps = 0.0;
};

struct InstanceSolution {
  double best_x = 0.0;
  RwaSolution solution;
  std::vector<XOutcome> per_x;
};

class InfeasibleInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Candidate routes for every node pair, ranked by NSR with the full-load
/// planning weights.
std::vector<std::vector<CandidatePath>> rank_candidates(const PhysicalTopology& pt, const PhysicalLayer& phy, int k);

/// Solves the instance at every relaxation in x_grid and keeps the one with
/// the largest total throughput, the smaller x on ties. Throws
/// InfeasibleInstance if no x admits N_lambda >= 1.
InstanceSolution solve_instance(const PhysicalTopology& pt, const PhysicalLayer& phy, const std::vector<double>& x_grid,
                                int k, const RwaOptions& rwa);

/// RWA options of one sweep instance; rerunning solve_instance with them
/// reproduces that instance's record.
RwaOptions instance_rwa_options(const SweepConfig& cfg, int topology, int realisation, int axis_index);

/// One ledger row.
struct InstanceRecord {
  int axis_index = 0;
  int topology = 0;
  int realisation = 0;
  double axis_value = 0.0;
  double mean_link_km = 0.0;
  double normalized_diameter = 0.0;
  double best_x = 0.0;
  int n_lambda = 0;
  double avg_gbps = 0.0;
  double total_tbps = 0.0;
  int max_link_occupancy = 0;
  long attempts = 0;
};

struct SkippedInstance {
  int axis_index = 0;
  int topology = 0;
  int realisation = 0;
  std::string reason;
};

struct AxisPointStats {
  double axis_value = 0.0;
  EnsembleStat n_lambda;
  EnsembleStat avg_gbps;
  EnsembleStat total_tbps;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::MeanLinkKm;
  std::vector<AxisPointStats> points;
  std::vector<InstanceRecord> records;
  std::vector<SkippedInstance> skipped;
  int infeasible = 0;
};

std::string ledger_header();
std::string format_record(const InstanceRecord& r);
InstanceRecord parse_record(const std::string& line);
std::string ledger_csv(const std::vector<InstanceRecord>& records);
std::vector<InstanceRecord> parse_ledger(const std::string& csv);

/// Ensemble statistics per axis point, folded over records in ledger order.
/// Axis points without records are omitted.
std::vector<AxisPointStats> aggregate(const std::vector<InstanceRecord>& records, const std::vector<double>& axis_values);

using ProgressFn = std::function<void(const std::string&)>;

/// Runs every (topology, realisation, axis point) instance. With an output
/// directory, each finished instance is stored under DIR/records and reused
/// by later runs with the same configuration.
SweepResult sweep_scale(const SweepConfig& cfg, const std::optional<std::filesystem::path>& out_dir = std::nullopt,
                        const ProgressFn& progress = {});
SweepResult sweep_ellipticity(const SweepConfig& cfg,
                              const std::optional<std::filesystem::path>& out_dir = std::nullopt,
                              const ProgressFn& progress = {});

/// Writes {n_lambda, avg_gbps, total_tbps} x {mean, p16, p84} TSVs, the
/// ledger and the skipped-instance list.
void emit_tsv(const SweepResult& result, const std::filesystem::path& dir);

/// Worker count: cfg value, else ACMN_WORKERS, else hardware concurrency.
int resolve_workers(int requested);

}  // namespace acmn
