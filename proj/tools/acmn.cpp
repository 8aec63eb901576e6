#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acmn/experiments.hpp"
#include "acmn/io.hpp"
#include "acmn/routing.hpp"
#include "acmn/seeding.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace acmn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

void log(const std::string& msg) { std::cerr << msg << '\n'; }

json load_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
}

// Run-level options shared by assign and solve-one, read from the sweep
// config schema so one file can drive both.
SweepConfig load_run_config(const std::string& path) {
  if (path.empty()) return default_sweep_config(SweepAxis::MeanLinkKm);
  return sweep_config_from_json(load_json(path), SweepAxis::MeanLinkKm);
}

PhysicalTopology load_physical(const std::string& topology_path, bool nsfnet, double span_km) {
  if (nsfnet) {
    const auto ref = load_nsfnet();
    return make_physical(ref.topology, ref.link_km, span_km);
  }
  if (topology_path.empty()) throw ConfigError("either --topology or --nsfnet is required");
  auto file = read_topology_file(topology_path);
  if (auto err = check_topology(file.topology)) throw ConfigError(topology_path + ": " + *err);
  if (!file.length_km) throw ConfigError(topology_path + ": physical topology needs length_km");
  auto pt = make_physical(file.topology, *file.length_km, span_km);
  if (file.spans && *file.spans != pt.link_spans) {
    log("note: spans in " + topology_path + " differ from quantized lengths; using quantized lengths");
  }
  return pt;
}

void write_solution(const fs::path& dir, const RwaSolution& sol, json summary) {
  fs::create_directories(dir);
  write_file_atomic(dir / "solution.tsv", solution_to_tsv(sol));
  summary.update(solution_summary(sol));
  write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
}

int cmd_gen_ensemble(int count, std::uint64_t seed, const std::string& mode, int swaps, bool with_distances,
                     const fs::path& out) {
  GeneratorOptions opts;
  if (mode == "edge_swap") opts.mode = GeneratorMode::EdgeSwap;
  else if (mode == "uniform") opts.mode = GeneratorMode::UniformRandom;
  else throw ConfigError("--mode must be edge_swap or uniform");
  opts.swap_count = swaps;
  fs::create_directories(out);
  const auto ref = load_nsfnet();
  const auto pdf = fit_kde(ref.link_km);
  for (int i = 0; i < count; ++i) {
    const auto t = generate_acmn(derive_seed(seed, {1, static_cast<std::uint64_t>(i)}), opts);
    json j;
    if (with_distances) {
      j = physical_to_json(assign_distances(t, pdf, derive_seed(seed, {2, static_cast<std::uint64_t>(i)})));
    } else {
      j = topology_to_json(t);
    }
    char name[32];
    std::snprintf(name, sizeof name, "topology_%04d.json", i);
    write_file_atomic(out / name, j.dump(2) + "\n");
  }
  log("wrote " + std::to_string(count) + " topologies to " + out.string());
  return kExitOk;
}

int cmd_assign(const PhysicalTopology& pt, const SweepConfig& cfg, double x, std::uint64_t seed, const fs::path& out) {
  const PhysicalLayer phy(cfg.fiber, cfg.grid);
  const auto ranked = rank_candidates(pt, phy, cfg.k);
  const auto pairs = node_pairs(pt.logical);
  std::vector<PathSet> demands;
  for (std::size_t p = 0; p < pairs.size(); ++p) demands.push_back(relax_filter(pairs[p], ranked[p], x));
  fs::create_directories(out);
  write_file_atomic(out / "candidates.tsv", candidates_to_tsv(ranked, demands));
  RwaOptions opts{cfg.wavelengths, cfg.restarts, seed};
  auto placed = maximize_lambda(demands, static_cast<int>(pt.logical.links.size()), opts);
  if (!placed) {
    log("infeasible: not even one lightpath per node pair fits");
    return kExitInfeasible;
  }
  const auto sol = final_throughput(std::move(*placed), pt, phy);
  write_solution(out, sol, json{{"x", x}, {"seed", seed}});
  std::cout << solution_summary(sol).dump() << '\n';
  return kExitOk;
}

int cmd_solve_one(const PhysicalTopology& pt, const SweepConfig& cfg, std::uint64_t seed, const fs::path& out) {
  const PhysicalLayer phy(cfg.fiber, cfg.grid);
  RwaOptions opts{cfg.wavelengths, cfg.restarts, seed};
  InstanceSolution s;
  try {
    s = solve_instance(pt, phy, cfg.x_grid, cfg.k, opts);
  } catch (const InfeasibleInstance& e) {
    log(std::string("infeasible: ") + e.what());
    return kExitInfeasible;
  }
  json per_x = json::array();
  for (const auto& o : s.per_x) per_x.push_back({{"x", o.x}, {"n_lambda", o.n_lambda}, {"total_tbps", o.total_bps / 1e12}});
  write_solution(out, s.solution, json{{"best_x", s.best_x}, {"seed", seed}, {"per_x", per_x}});
  std::cout << json{{"best_x", s.best_x}, {"n_lambda", s.solution.n_lambda},
                    {"avg_gbps", s.solution.average_capacity_bps / 1e9},
                    {"total_tbps", s.solution.total_capacity_bps / 1e12}}
                   .dump()
            << '\n';
  return kExitOk;
}

int cmd_sweep(SweepAxis axis, const std::string& config_path, const fs::path& out, bool quiet) {
  const auto cfg = config_path.empty() ? default_sweep_config(axis)
                                       : sweep_config_from_json(load_json(config_path), axis);
  ProgressFn progress;
  if (!quiet) progress = [](const std::string& m) { log(m); };
  const auto result = axis == SweepAxis::MeanLinkKm ? sweep_scale(cfg, out, progress) : sweep_ellipticity(cfg, out, progress);
  for (const auto& s : result.skipped) {
    log("skipped axis " + std::to_string(s.axis_index) + " topology " + std::to_string(s.topology) + " realisation " +
        std::to_string(s.realisation) + ": " + s.reason);
  }
  if (result.points.size() < cfg.axis_values.size()) {
    log("warning: " + std::to_string(cfg.axis_values.size() - result.points.size()) +
        " axis point(s) have no accepted instance and are omitted");
  }
  if (!result.points.empty()) emit_tsv(result, out);
  for (const auto& p : result.points) {
    std::printf("%s\tN=%s\tavg_gbps=%s\ttotal_tbps=%s\tcount=%zu\n", format_number(p.axis_value).c_str(),
                format_number(p.n_lambda.mean).c_str(), format_number(p.avg_gbps.mean).c_str(),
                format_number(p.total_tbps.mean).c_str(), p.n_lambda.count);
  }
  if (result.infeasible > cfg.infeasible_budget) {
    log(std::to_string(result.infeasible) + " infeasible instance(s) exceed the budget of " +
        std::to_string(cfg.infeasible_budget));
    return kExitInfeasible;
  }
  if (result.points.empty()) {
    log("no instance was solved");
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_validate(const std::string& solution_path, const std::string& topology_path, int wavelengths) {
  const auto text = read_file(solution_path);
  LogicalTopology t;
  if (topology_path.empty()) {
    t = topology_from_solution_tsv(text);
    log("no --topology given; checking against the links used by the routes");
  } else {
    t = read_topology_file(topology_path).topology;
  }
  const auto sol = solution_from_tsv(text, t, wavelengths);
  const auto report = validate_solution(sol, t);
  for (const auto& v : report.violations) std::cout << v << '\n';
  std::cout << (report.ok() ? "valid" : "invalid") << ": " << sol.assignments.size() << " lightpaths, N_lambda "
            << sol.n_lambda << ", max link occupancy " << report.max_link_occupancy << '\n';
  return report.ok() ? kExitOk : kExitValidation;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical-layer-aware planning and throughput sweeps for mesh optical networks"};
  app.require_subcommand(1);

  int gen_count = 20;
  std::uint64_t gen_seed = 1;
  std::string gen_mode = "edge_swap";
  int gen_swaps = 100;
  bool gen_distances = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-ensemble", "Generate ACMN topologies as JSON files");
  gen->add_option("--count", gen_count, "Number of topologies")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--mode", gen_mode, "edge_swap or uniform");
  gen->add_option("--swaps", gen_swaps, "Double edge swaps per topology")->check(CLI::NonNegativeNumber);
  gen->add_flag("--distances", gen_distances, "Also draw link distances from the NSFNET distance density");
  gen->add_option("--out", gen_out, "Output directory")->required();

  std::string topo_path, run_config, out_dir, x_grid;
  bool use_nsfnet = false;
  double assign_x = 1.0;
  std::uint64_t run_seed = 1;
  auto add_instance_options = [&](CLI::App* sub) {
    sub->add_option("--topology", topo_path, "Physical topology JSON (nodes, links, length_km)");
    sub->add_flag("--nsfnet", use_nsfnet, "Use NSFNET with its reference distances");
    sub->add_option("--config", run_config, "JSON with fiber, grid, k, wavelengths, restarts, x_grid");
    sub->add_option("--seed", run_seed, "RWA seed");
    sub->add_option("--out", out_dir, "Output directory")->required();
  };
  auto* assign = app.add_subcommand("assign", "Route and assign wavelengths at one relaxation");
  add_instance_options(assign);
  assign->add_option("--x", assign_x, "Throughput relaxation")->check(CLI::Range(0.0, 1.0));
  auto* solve = app.add_subcommand("solve-one", "Sweep the relaxation for one physical topology");
  add_instance_options(solve);
  solve->add_option("--x-grid", x_grid, "Comma separated relaxations, overrides the config");

  std::string sweep_config, sweep_out;
  bool quiet = false;
  auto* scale = app.add_subcommand("sweep-scale", "Throughput versus mean link distance");
  auto* ellip = app.add_subcommand("sweep-ellipticity", "Throughput versus normalised network diameter");
  for (auto* sub : {scale, ellip}) {
    sub->add_option("--config", sweep_config, "Sweep configuration JSON");
    sub->add_option("--out", sweep_out, "Output directory")->required();
    sub->add_flag("--quiet", quiet, "Suppress per-instance progress");
  }

  std::string solution_path, validate_topology;
  int validate_wavelengths = 156;
  auto* validate = app.add_subcommand("validate", "Check a solution table");
  validate->add_option("--solution", solution_path, "solution.tsv")->required();
  validate->add_option("--topology", validate_topology, "Topology JSON the solution was planned on");
  validate->add_option("--wavelengths", validate_wavelengths, "Channels per link")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) return cmd_gen_ensemble(gen_count, gen_seed, gen_mode, gen_swaps, gen_distances, gen_out);
    if (*assign || *solve) {
      auto cfg = load_run_config(run_config);
      if (!x_grid.empty()) {
        cfg.x_grid = parse_list(x_grid);
        check_sweep_config(cfg, SweepAxis::MeanLinkKm);
      }
      const auto pt = load_physical(topo_path, use_nsfnet, cfg.fiber.span_km);
      return *assign ? cmd_assign(pt, cfg, assign_x, run_seed, out_dir) : cmd_solve_one(pt, cfg, run_seed, out_dir);
    }
    if (*scale) return cmd_sweep(SweepAxis::MeanLinkKm, sweep_config, sweep_out, quiet);
    if (*ellip) return cmd_sweep(SweepAxis::NormalizedDiameter, sweep_config, sweep_out, quiet);
    if (*validate) return cmd_validate(solution_path, validate_topology, validate_wavelengths);
  } catch (const ConfigError& e) {
    log(std::string("config error: ") + e.what());
    return kExitConfig;
  } catch (const TopologyError& e) {
    log(std::string("topology error: ") + e.what());
    return kExitConfig;
  } catch (const GeometryError& e) {
    log(std::string("geometry error: ") + e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    log(std::string("error: ") + e.what());
    return kExitValidation;
  }
  return kExitOk;
}
