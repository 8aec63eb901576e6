#include "acmn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "acmn/io.hpp"
#include "acmn/routing.hpp"
#include "acmn/seeding.hpp"

namespace acmn {

using nlohmann::json;

namespace {

// Domain tags keep the child seed streams of different purposes apart.
constexpr std::uint64_t kTopologyStream = 1;
constexpr std::uint64_t kDistanceStream = 2;
constexpr std::uint64_t kRwaStream = 3;

std::string generator_mode_name(GeneratorMode m) { return m == GeneratorMode::EdgeSwap ? "edge_swap" : "uniform"; }

GeneratorMode generator_mode_from(const std::string& s) {
  if (s == "edge_swap") return GeneratorMode::EdgeSwap;
  if (s == "uniform") return GeneratorMode::UniformRandom;
  throw ConfigError("generator.mode must be 'edge_swap' or 'uniform'");
}

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

SweepConfig default_sweep_config(SweepAxis axis) {
  SweepConfig cfg;
  if (axis == SweepAxis::MeanLinkKm) {
    cfg.axis_values = {640, 1040, 1440, 1840, 2240, 2640, 3040};
  } else {
    cfg.axis_values = {1.7, 2.3, 3.0};
  }
  return cfg;
}

SweepConfig sweep_config_from_json(const json& j, SweepAxis axis) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SweepConfig cfg = default_sweep_config(axis);
  for (const auto& [key, v] : j.items()) {
    if (key == "topologies") cfg.topologies = get_as<int>(v, key);
    else if (key == "realisations") cfg.realisations = get_as<int>(v, key);
    else if (key == "x_grid") cfg.x_grid = get_as<std::vector<double>>(v, key);
    else if (key == "axis_values") cfg.axis_values = get_as<std::vector<double>>(v, key);
    else if (key == "master_seed") cfg.master_seed = get_as<std::uint64_t>(v, key);
    else if (key == "k") cfg.k = get_as<int>(v, key);
    else if (key == "wavelengths") cfg.wavelengths = get_as<int>(v, key);
    else if (key == "restarts") cfg.restarts = get_as<int>(v, key);
    else if (key == "fiber") cfg.fiber = fiber_from_json(v, cfg.fiber);
    else if (key == "grid") cfg.grid = grid_from_json(v, cfg.grid);
    else if (key == "generator") {
      if (!v.is_object()) throw ConfigError("generator must be an object");
      for (const auto& [gk, gv] : v.items()) {
        if (gk == "mode") cfg.generator.mode = generator_mode_from(get_as<std::string>(gv, gk));
        else if (gk == "swap_count") cfg.generator.swap_count = get_as<int>(gv, gk);
        else if (gk == "node_count") cfg.generator.node_count = get_as<int>(gv, gk);
        else if (gk == "link_count") cfg.generator.link_count = get_as<int>(gv, gk);
        else if (gk == "min_degree") cfg.generator.min_degree = get_as<int>(gv, gk);
        else if (gk == "max_retries") cfg.generator.max_retries = get_as<int>(gv, gk);
        else throw ConfigError("unknown generator key '" + gk + "'");
      }
    } else if (key == "ensemble") cfg.ensemble = get_as<std::string>(v, key);
    else if (key == "distances") cfg.distances = get_as<std::string>(v, key);
    else if (key == "ellipticity_tolerance") cfg.ellipticity_tolerance = get_as<double>(v, key);
    else if (key == "mean_pair_km") cfg.mean_pair_km = get_as<double>(v, key);
    else if (key == "ellipticity_max_attempts") cfg.ellipticity_max_attempts = get_as<long>(v, key);
    else if (key == "infeasible_budget") cfg.infeasible_budget = get_as<int>(v, key);
    else if (key == "workers") cfg.workers = get_as<int>(v, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  check_sweep_config(cfg, axis);
  return cfg;
}

json sweep_config_to_json(const SweepConfig& cfg) {
  // Worker count is deliberately left out: it never changes results.
  return json{{"topologies", cfg.topologies},
              {"realisations", cfg.realisations},
              {"x_grid", cfg.x_grid},
              {"axis_values", cfg.axis_values},
              {"master_seed", cfg.master_seed},
              {"k", cfg.k},
              {"wavelengths", cfg.wavelengths},
              {"restarts", cfg.restarts},
              {"fiber", fiber_to_json(cfg.fiber)},
              {"grid", grid_to_json(cfg.grid)},
              {"generator",
               {{"mode", generator_mode_name(cfg.generator.mode)},
                {"swap_count", cfg.generator.swap_count},
                {"node_count", cfg.generator.node_count},
                {"link_count", cfg.generator.link_count},
                {"min_degree", cfg.generator.min_degree},
                {"max_retries", cfg.generator.max_retries}}},
              {"ensemble", cfg.ensemble},
              {"distances", cfg.distances},
              {"ellipticity_tolerance", cfg.ellipticity_tolerance},
              {"mean_pair_km", cfg.mean_pair_km},
              {"ellipticity_max_attempts", cfg.ellipticity_max_attempts},
              {"infeasible_budget", cfg.infeasible_budget}};
}

void check_sweep_config(const SweepConfig& cfg, SweepAxis axis) {
  if (cfg.topologies < 1 || cfg.realisations < 1) throw ConfigError("ensemble sizes must be positive");
  if (cfg.x_grid.empty()) throw ConfigError("x_grid must not be empty");
  for (double x : cfg.x_grid) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("x values must lie in [0, 1]");
  }
  if (cfg.axis_values.empty()) throw ConfigError("axis_values must not be empty");
  for (double a : cfg.axis_values) {
    if (!(a > 0.0)) throw ConfigError("axis values must be positive");
    if (axis == SweepAxis::NormalizedDiameter && a < 1.0) throw ConfigError("normalised diameter targets must be >= 1");
  }
  if (cfg.k < 1) throw ConfigError("k must be at least 1");
  if (cfg.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (cfg.wavelengths < 1 || cfg.wavelengths > cfg.grid.channel_count()) {
    throw ConfigError("wavelengths must lie in [1, " + std::to_string(cfg.grid.channel_count()) + "]");
  }
  if (cfg.ensemble != "acmn" && cfg.ensemble != "nsfnet") throw ConfigError("ensemble must be 'acmn' or 'nsfnet'");
  if (cfg.distances != "kde" && cfg.distances != "embedded") {
    throw ConfigError("distances must be 'kde' or 'embedded'");
  }
  if (cfg.distances == "embedded" && cfg.ensemble != "nsfnet") {
    throw ConfigError("embedded distances exist only for the nsfnet ensemble");
  }
  if (cfg.distances == "embedded" && axis == SweepAxis::NormalizedDiameter) {
    throw ConfigError("the ellipticity sweep draws its own distances");
  }
  if (!(cfg.ellipticity_tolerance > 0.0)) throw ConfigError("ellipticity_tolerance must be positive");
  if (!(cfg.mean_pair_km > 0.0)) throw ConfigError("mean_pair_km must be positive");
  if (cfg.ellipticity_max_attempts < 1) throw ConfigError("ellipticity_max_attempts must be positive");
  if (cfg.infeasible_budget < 0) throw ConfigError("infeasible_budget must be non-negative");
  if (cfg.workers < 0) throw ConfigError("workers must be non-negative");
}

std::vector<std::vector<CandidatePath>> rank_candidates(const PhysicalTopology& pt, const PhysicalLayer& phy, int k) {
  const auto weights = planning_link_nsr(pt, phy);
  std::vector<std::vector<CandidatePath>> ranked;
  for (const auto& pair : node_pairs(pt.logical)) ranked.push_back(k_shortest_nsr_paths(pt, weights, pair, k, phy));
  return ranked;
}

InstanceSolution solve_instance(const PhysicalTopology& pt, const PhysicalLayer& phy, const std::vector<double>& x_grid,
                                int k, const RwaOptions& rwa) {
  const auto ranked = rank_candidates(pt, phy, k);
  const auto pairs = node_pairs(pt.logical);
  const int link_count = static_cast<int>(pt.logical.links.size());

  std::optional<InstanceSolution> best;
  std::vector<XOutcome> per_x;
  for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
    const double x = x_grid[xi];
    std::vector<Demand> demands;
    demands.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) demands.push_back(relax_filter(pairs[p], ranked[p], x));
    RwaOptions opts = rwa;
    opts.seed = derive_seed(rwa.seed, {static_cast<std::uint64_t>(xi)});
    auto placed = maximize_lambda(demands, link_count, opts);
    if (!placed) {
      per_x.push_back({x, 0, 0.0});
      continue;
    }
    auto sol = final_throughput(std::move(*placed), pt, phy);
    per_x.push_back({x, sol.n_lambda, sol.total_capacity_bps});
    if (!best || sol.total_capacity_bps > best->solution.total_capacity_bps) {
      best = InstanceSolution{x, std::move(sol), {}};
    }
  }
  if (!best) throw InfeasibleInstance("no relaxation admits one lightpath per node pair");
  best->per_x = std::move(per_x);
  return std::move(*best);
}

RwaOptions instance_rwa_options(const SweepConfig& cfg, int topology, int realisation, int axis_index) {
  RwaOptions o;
  o.wavelengths = cfg.wavelengths;
  o.restarts = cfg.restarts;
  o.seed = derive_seed(cfg.master_seed, {kRwaStream, static_cast<std::uint64_t>(topology),
                                         static_cast<std::uint64_t>(realisation),
                                         static_cast<std::uint64_t>(axis_index)});
  return o;
}

std::string ledger_header() {
  return "axis_index,topology,realisation,axis_value,mean_link_km,normalized_diameter,best_x,n_lambda,avg_gbps,"
         "total_tbps,max_link_occupancy,attempts";
}

std::string format_record(const InstanceRecord& r) {
  return std::to_string(r.axis_index) + "," + std::to_string(r.topology) + "," + std::to_string(r.realisation) + "," +
         format_number(r.axis_value) + "," + format_number(r.mean_link_km) + "," +
         format_number(r.normalized_diameter) + "," + format_number(r.best_x) + "," + std::to_string(r.n_lambda) +
         "," + format_number(r.avg_gbps) + "," + format_number(r.total_tbps) + "," +
         std::to_string(r.max_link_occupancy) + "," + std::to_string(r.attempts);
}

InstanceRecord parse_record(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) f.push_back(item);
  if (f.size() != 12) throw std::runtime_error("ledger row has " + std::to_string(f.size()) + " fields: " + line);
  InstanceRecord r;
  r.axis_index = std::stoi(f[0]);
  r.topology = std::stoi(f[1]);
  r.realisation = std::stoi(f[2]);
  r.axis_value = std::stod(f[3]);
  r.mean_link_km = std::stod(f[4]);
  r.normalized_diameter = std::stod(f[5]);
  r.best_x = std::stod(f[6]);
  r.n_lambda = std::stoi(f[7]);
  r.avg_gbps = std::stod(f[8]);
  r.total_tbps = std::stod(f[9]);
  r.max_link_occupancy = std::stoi(f[10]);
  r.attempts = std::stol(f[11]);
  return r;
}

std::string ledger_csv(const std::vector<InstanceRecord>& records) {
  std::string out = ledger_header() + "\n";
  for (const auto& r : records) out += format_record(r) + "\n";
  return out;
}

std::vector<InstanceRecord> parse_ledger(const std::string& csv) {
  std::vector<InstanceRecord> out;
  std::stringstream in(csv);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      if (line != ledger_header()) throw std::runtime_error("unexpected ledger header");
      continue;
    }
    if (!line.empty()) out.push_back(parse_record(line));
  }
  return out;
}

std::vector<AxisPointStats> aggregate(const std::vector<InstanceRecord>& records,
                                      const std::vector<double>& axis_values) {
  std::vector<AxisPointStats> points;
  for (std::size_t a = 0; a < axis_values.size(); ++a) {
    std::vector<double> nl, avg, total;
    for (const auto& r : records) {
      if (r.axis_index != static_cast<int>(a)) continue;
      nl.push_back(r.n_lambda);
      avg.push_back(r.avg_gbps);
      total.push_back(r.total_tbps);
    }
    if (nl.empty()) continue;
    points.push_back({axis_values[a], ensemble_stats(nl, axis_values[a]), ensemble_stats(avg, axis_values[a]),
                      ensemble_stats(total, axis_values[a])});
  }
  return points;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ACMN_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw ConfigError("ACMN_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct WorkItem {
  int axis_index;
  int topology;
  int realisation;
};

struct WorkOutcome {
  std::optional<InstanceRecord> record;
  std::optional<SkippedInstance> skipped;
  bool infeasible = false;
};

std::string record_file_name(const WorkItem& w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "a%03d_t%05d_r%05d.rec", w.axis_index, w.topology, w.realisation);
  return buf;
}

// Record file: "ok\n<ledger row>\n" or "skipped\t<infeasible|rejected>\t<message>\n".
std::string encode_outcome(const WorkOutcome& o) {
  if (o.record) return "ok\n" + format_record(*o.record) + "\n";
  return std::string("skipped\t") + (o.infeasible ? "infeasible" : "rejected") + "\t" + o.skipped->reason + "\n";
}

std::optional<WorkOutcome> decode_outcome(const std::string& text, const WorkItem& w) {
  WorkOutcome o;
  if (text.rfind("ok\n", 0) == 0) {
    auto line = text.substr(3);
    while (!line.empty() && line.back() == '\n') line.pop_back();
    o.record = parse_record(line);
    if (o.record->axis_index != w.axis_index || o.record->topology != w.topology ||
        o.record->realisation != w.realisation) {
      return std::nullopt;
    }
    return o;
  }
  if (text.rfind("skipped\t", 0) == 0) {
    std::stringstream ss(text.substr(8));
    std::string kind, reason;
    std::getline(ss, kind, '\t');
    std::getline(ss, reason);
    o.infeasible = kind == "infeasible";
    o.skipped = SkippedInstance{w.axis_index, w.topology, w.realisation, reason};
    return o;
  }
  return std::nullopt;
}

// Prepares the record directory. A directory holding records of a different
// configuration is refused rather than mixed.
std::optional<std::filesystem::path> prepare_records(const SweepConfig& cfg, SweepAxis axis,
                                                     const std::optional<std::filesystem::path>& out_dir) {
  if (!out_dir) return std::nullopt;
  namespace fs = std::filesystem;
  fs::create_directories(*out_dir / "records");
  json echoed = sweep_config_to_json(cfg);
  echoed["axis"] = axis == SweepAxis::MeanLinkKm ? "mean_link_km" : "normalized_diameter";
  const auto text = echoed.dump(2) + "\n";
  const auto cfg_path = *out_dir / "config.json";
  if (fs::exists(cfg_path)) {
    if (read_file(cfg_path) != text) {
      throw ConfigError(out_dir->string() + " holds results of a different configuration");
    }
  } else {
    write_file_atomic(cfg_path, text);
  }
  return *out_dir / "records";
}

template <class Solve>
SweepResult run_sweep(const SweepConfig& cfg, SweepAxis axis, const std::optional<std::filesystem::path>& out_dir,
                      const ProgressFn& progress, Solve solve) {
  check_sweep_config(cfg, axis);
  const auto records_dir = prepare_records(cfg, axis, out_dir);

  std::vector<WorkItem> items;
  for (int a = 0; a < static_cast<int>(cfg.axis_values.size()); ++a) {
    for (int t = 0; t < cfg.topologies; ++t) {
      for (int r = 0; r < cfg.realisations; ++r) items.push_back({a, t, r});
    }
  }

  std::vector<WorkOutcome> outcomes(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      const auto& w = items[i];
      try {
        std::optional<WorkOutcome> cached;
        std::filesystem::path rec_path;
        if (records_dir) {
          rec_path = *records_dir / record_file_name(w);
          if (std::filesystem::exists(rec_path)) cached = decode_outcome(read_file(rec_path), w);
        }
        if (cached) {
          outcomes[i] = std::move(*cached);
        } else {
          outcomes[i] = solve(w);
          if (records_dir) write_file_atomic(rec_path, encode_outcome(outcomes[i]));
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
      const std::size_t n = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        std::string msg = "[" + std::to_string(n) + "/" + std::to_string(items.size()) + "] axis " +
                          format_number(cfg.axis_values[w.axis_index]) + " topology " + std::to_string(w.topology) +
                          " realisation " + std::to_string(w.realisation);
        if (errors[i]) msg += ": error";
        else if (outcomes[i].skipped) msg += ": skipped (" + outcomes[i].skipped->reason + ")";
        progress(msg);
      }
    }
  };

  const int n_workers = std::min<int>(resolve_workers(cfg.workers), static_cast<int>(items.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult result;
  result.axis = axis;
  std::vector<InstanceRecord> records;
  for (auto& o : outcomes) {
    if (o.record) records.push_back(*o.record);
    if (o.skipped) {
      result.skipped.push_back(*o.skipped);
      if (o.infeasible) ++result.infeasible;
    }
  }
  // Items are generated in (axis, topology, realisation) order, so records
  // already follow ledger order. Aggregates come from the parsed ledger.
  result.records = parse_ledger(ledger_csv(records));
  result.points = aggregate(result.records, cfg.axis_values);
  return result;
}

std::vector<LogicalTopology> ensemble_topologies(const SweepConfig& cfg) {
  std::vector<LogicalTopology> out;
  const auto nsfnet = load_nsfnet().topology;
  for (int t = 0; t < cfg.topologies; ++t) {
    if (cfg.ensemble == "nsfnet") {
      out.push_back(nsfnet);
    } else {
      out.push_back(generate_acmn(derive_seed(cfg.master_seed, {kTopologyStream, static_cast<std::uint64_t>(t)}),
                                  cfg.generator));
    }
  }
  return out;
}

InstanceRecord make_record(const WorkItem& w, double axis_value, const PhysicalTopology& pt,
                           const InstanceSolution& s, long attempts) {
  InstanceRecord r;
  r.axis_index = w.axis_index;
  r.topology = w.topology;
  r.realisation = w.realisation;
  r.axis_value = axis_value;
  r.mean_link_km = pt.mean_link_km();
  r.normalized_diameter = normalized_diameter(pt);
  r.best_x = s.best_x;
  r.n_lambda = s.solution.n_lambda;
  r.avg_gbps = s.solution.average_capacity_bps / 1e9;
  r.total_tbps = s.solution.total_capacity_bps / 1e12;
  r.max_link_occupancy = s.solution.max_link_occupancy;
  r.attempts = attempts;
  return r;
}

WorkOutcome solve_or_skip(const WorkItem& w, double axis_value, const PhysicalTopology& pt, const PhysicalLayer& phy,
                          const SweepConfig& cfg, long attempts) {
  WorkOutcome o;
  try {
    const auto s = solve_instance(pt, phy, cfg.x_grid, cfg.k, instance_rwa_options(cfg, w.topology, w.realisation, w.axis_index));
    o.record = make_record(w, axis_value, pt, s, attempts);
  } catch (const InfeasibleInstance& e) {
    o.infeasible = true;
    o.skipped = SkippedInstance{w.axis_index, w.topology, w.realisation, e.what()};
  }
  return o;
}

}  // namespace

SweepResult sweep_scale(const SweepConfig& cfg, const std::optional<std::filesystem::path>& out_dir,
                        const ProgressFn& progress) {
  check_sweep_config(cfg, SweepAxis::MeanLinkKm);
  const auto topologies = ensemble_topologies(cfg);
  const auto nsfnet = load_nsfnet();
  const auto pdf = fit_kde(nsfnet.link_km, cfg.fiber.span_km);
  const PhysicalLayer phy(cfg.fiber, cfg.grid);

  return run_sweep(cfg, SweepAxis::MeanLinkKm, out_dir, progress, [&](const WorkItem& w) {
    PhysicalTopology base;
    if (cfg.distances == "embedded") {
      base = make_physical(topologies[w.topology], nsfnet.link_km, cfg.fiber.span_km);
    } else {
      // One distance realisation per (topology, realisation), shared by every axis point.
      base = assign_distances(topologies[w.topology], pdf,
                              derive_seed(cfg.master_seed, {kDistanceStream, static_cast<std::uint64_t>(w.topology),
                                                            static_cast<std::uint64_t>(w.realisation)}),
                              cfg.fiber.span_km);
    }
    const double target = cfg.axis_values[w.axis_index];
    const auto pt = scale_to_mean(base, target);
    return solve_or_skip(w, target, pt, phy, cfg, 0);
  });
}

SweepResult sweep_ellipticity(const SweepConfig& cfg, const std::optional<std::filesystem::path>& out_dir,
                              const ProgressFn& progress) {
  check_sweep_config(cfg, SweepAxis::NormalizedDiameter);
  const auto topologies = ensemble_topologies(cfg);
  const auto pdf = fit_kde(load_nsfnet().link_km, cfg.fiber.span_km);
  const PhysicalLayer phy(cfg.fiber, cfg.grid);

  return run_sweep(cfg, SweepAxis::NormalizedDiameter, out_dir, progress, [&](const WorkItem& w) {
    EllipticityTarget target;
    target.d_target = cfg.axis_values[w.axis_index];
    target.tolerance = cfg.ellipticity_tolerance;
    target.mean_node_pair_km = cfg.mean_pair_km;
    target.max_attempts = cfg.ellipticity_max_attempts;
    const auto seed = derive_seed(cfg.master_seed, {kDistanceStream, static_cast<std::uint64_t>(w.topology),
                                                    static_cast<std::uint64_t>(w.realisation),
                                                    static_cast<std::uint64_t>(w.axis_index)});
    try {
      const auto draw = assign_with_ellipticity(topologies[w.topology], target, pdf, seed, cfg.fiber.span_km);
      return solve_or_skip(w, target.d_target, draw.topology, phy, cfg, draw.attempts);
    } catch (const RejectionBudgetExhausted& e) {
      WorkOutcome o;
      o.skipped = SkippedInstance{w.axis_index, w.topology, w.realisation, e.what()};
      return o;
    }
  });
}

void emit_tsv(const SweepResult& result, const std::filesystem::path& dir) {
  if (result.points.empty()) throw std::runtime_error("sweep produced no solved instances");
  std::filesystem::create_directories(dir);
  struct Curve {
    const char* metric;
    const EnsembleStat AxisPointStats::*stat;
  };
  const Curve curves[] = {{"n_lambda", &AxisPointStats::n_lambda},
                          {"avg_gbps", &AxisPointStats::avg_gbps},
                          {"total_tbps", &AxisPointStats::total_tbps}};
  struct Field {
    const char* name;
    double EnsembleStat::*value;
  };
  const Field fields[] = {{"mean", &EnsembleStat::mean}, {"p16", &EnsembleStat::p16}, {"p84", &EnsembleStat::p84}};
  for (const auto& c : curves) {
    for (const auto& f : fields) {
      std::string text = "axis_value\tvalue\n";
      for (const auto& p : result.points) {
        text += format_number(p.axis_value) + "\t" + format_number((p.*(c.stat)).*(f.value)) + "\n";
      }
      write_file_atomic(dir / (std::string(c.metric) + "_" + f.name + ".tsv"), text);
    }
  }
  write_file_atomic(dir / "ledger.csv", ledger_csv(result.records));
  std::string skipped = "axis_index,topology,realisation,reason\n";
  for (const auto& s : result.skipped) {
    auto reason = s.reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    skipped += std::to_string(s.axis_index) + "," + std::to_string(s.topology) + "," +
               std::to_string(s.realisation) + "," + reason + "\n";
  }
  write_file_atomic(dir / "skipped.csv", skipped);
}

}  // namespace acmn
