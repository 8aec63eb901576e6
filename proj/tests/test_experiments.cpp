#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "acmn/experiments.hpp"
#include "acmn/io.hpp"
#include "acmn/routing.hpp"

using namespace acmn;
namespace fs = std::filesystem;

namespace {

SweepConfig small_config(SweepAxis axis) {
  auto cfg = default_sweep_config(axis);
  cfg.topologies = 2;
  cfg.realisations = 2;
  cfg.x_grid = {0.8, 0.9, 1.0};
  cfg.restarts = 2;
  if (axis == SweepAxis::MeanLinkKm) cfg.axis_values = {640, 1840, 3040};
  else cfg.axis_values = {1.9, 2.5};
  cfg.workers = 1;
  return cfg;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> tsv_names() {
  std::vector<std::string> out;
  for (const char* m : {"n_lambda", "avg_gbps", "total_tbps"}) {
    for (const char* s : {"mean", "p16", "p84"}) out.push_back(std::string(m) + "_" + s + ".tsv");
  }
  return out;
}

}  // namespace

TEST_CASE("config defaults and validation") {
  const auto scale = default_sweep_config(SweepAxis::MeanLinkKm);
  CHECK(scale.axis_values == std::vector<double>{640, 1040, 1440, 1840, 2240, 2640, 3040});
  CHECK(scale.x_grid.size() == 7);
  CHECK(scale.topologies == 20);
  CHECK(scale.realisations == 10);
  CHECK(default_sweep_config(SweepAxis::NormalizedDiameter).axis_values == std::vector<double>{1.7, 2.3, 3.0});

  using nlohmann::json;
  const auto cfg = sweep_config_from_json(json::parse(R"({"topologies": 3, "fiber": {"nf_db": 5}})"),
                                          SweepAxis::MeanLinkKm);
  CHECK(cfg.topologies == 3);
  CHECK(cfg.fiber.nf_db == 5);
  const auto echoed = sweep_config_from_json(sweep_config_to_json(cfg), SweepAxis::MeanLinkKm);
  CHECK(sweep_config_to_json(echoed) == sweep_config_to_json(cfg));

  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"topology": 3})"), SweepAxis::MeanLinkKm), ConfigError);
  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"x_grid": []})"), SweepAxis::MeanLinkKm), ConfigError);
  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"x_grid": [1.2]})"), SweepAxis::MeanLinkKm), ConfigError);
  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"k": "ten"})"), SweepAxis::MeanLinkKm), ConfigError);
  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"distances": "embedded"})"), SweepAxis::MeanLinkKm),
                  ConfigError);
  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"axis_values": [0.9]})"), SweepAxis::NormalizedDiameter),
                  ConfigError);
  CHECK_THROWS_AS(sweep_config_from_json(json::parse(R"({"wavelengths": 157})"), SweepAxis::MeanLinkKm), ConfigError);
}

TEST_CASE("single relaxation reduces to shortest-path routing") {
  const auto ref = load_nsfnet();
  const auto pt = make_physical(ref.topology, ref.link_km);
  const PhysicalLayer phy;
  RwaOptions opts;
  opts.seed = 3;
  const auto s = solve_instance(pt, phy, {1.0}, 10, opts);
  CHECK(s.best_x == 1.0);
  REQUIRE(s.per_x.size() == 1);
  const auto ranked = rank_candidates(pt, phy, 10);
  for (const auto& a : s.solution.assignments) {
    const auto& best = ranked[pair_index(a.pair, 14)];
    const auto kept = relax_filter(a.pair, best, 1.0);
    bool found = false;
    for (const auto& p : kept.paths) found = found || p.nodes == a.nodes;
    CHECK(found);
  }
}

TEST_CASE("nsfnet regression fixture") {
  const auto ref = load_nsfnet();
  const auto pt = make_physical(ref.topology, ref.link_km);
  const PhysicalLayer phy;
  RwaOptions opts;
  opts.seed = 1;
  const auto cfg = default_sweep_config(SweepAxis::MeanLinkKm);
  const auto s = solve_instance(pt, phy, cfg.x_grid, cfg.k, opts);
  CHECK(validate_solution(s.solution, pt.logical).ok());
  double best_total = 0.0;
  for (const auto& o : s.per_x) best_total = std::max(best_total, o.total_bps);
  CHECK(s.solution.total_capacity_bps == best_total);
  for (const auto& o : s.per_x) {
    if (o.total_bps == best_total) {
      CHECK(o.x == s.best_x);
      break;
    }
  }
  CHECK(s.best_x == 0.85);
  CHECK(s.solution.n_lambda == 12);
  CHECK(s.solution.total_capacity_bps / 1e12 == doctest::Approx(337.672478186).epsilon(1e-9));
  CHECK(s.solution.average_capacity_bps / 1e9 == doctest::Approx(309.223881123).epsilon(1e-9));
}

TEST_CASE("nsfnet-only sweep point matches the direct solve") {
  auto cfg = small_config(SweepAxis::MeanLinkKm);
  cfg.ensemble = "nsfnet";
  cfg.distances = "embedded";
  cfg.topologies = 1;
  cfg.realisations = 1;
  cfg.axis_values = {1463};
  const auto result = sweep_scale(cfg);
  REQUIRE(result.records.size() == 1);
  const auto ref = load_nsfnet();
  const auto pt = scale_to_mean(make_physical(ref.topology, ref.link_km), 1463);
  const auto s = solve_instance(pt, PhysicalLayer(), cfg.x_grid, cfg.k, instance_rwa_options(cfg, 0, 0, 0));
  const auto& r = result.records[0];
  CHECK(r.n_lambda == s.solution.n_lambda);
  CHECK(r.best_x == s.best_x);
  CHECK(r.total_tbps == doctest::Approx(s.solution.total_capacity_bps / 1e12).epsilon(1e-11));
}

TEST_CASE("ledger format round trip") {
  InstanceRecord r;
  r.axis_index = 2;
  r.topology = 7;
  r.realisation = 3;
  r.axis_value = 1840;
  r.mean_link_km = 1840.0000001;
  r.normalized_diameter = 2.2;
  r.best_x = 0.85;
  r.n_lambda = 9;
  r.avg_gbps = 296.123456789;
  r.total_tbps = 242.5;
  r.max_link_occupancy = 150;
  r.attempts = 12;
  const auto back = parse_record(format_record(r));
  CHECK(format_record(back) == format_record(r));
  CHECK(parse_ledger(ledger_csv({r, r})).size() == 2);
  CHECK_THROWS(parse_record("1,2,3"));
}

TEST_CASE("size sweep outputs, conservation and resume") {
  const auto cfg = small_config(SweepAxis::MeanLinkKm);
  const auto dir = fresh_dir("acmn_sweep_resume");
  const auto first = sweep_scale(cfg, dir);
  emit_tsv(first, dir);
  CHECK(first.records.size() == 12);
  CHECK(first.points.size() == 3);

  for (const auto& name : tsv_names()) {
    std::stringstream in(read_file(dir / name));
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
  }

  // Conservation: the emitted mean equals the mean recomputed from the ledger.
  const auto ledger = parse_ledger(read_file(dir / "ledger.csv"));
  CHECK(ledger.size() == first.records.size());
  std::stringstream mean_tsv(read_file(dir / "total_tbps_mean.tsv"));
  std::string line;
  std::getline(mean_tsv, line);
  for (std::size_t a = 0; a < cfg.axis_values.size(); ++a) {
    std::getline(mean_tsv, line);
    const double emitted = std::stod(line.substr(line.find('\t') + 1));
    double sum = 0.0;
    int n = 0;
    for (const auto& r : ledger) {
      if (r.axis_index == static_cast<int>(a)) {
        sum += r.total_tbps;
        ++n;
      }
    }
    CHECK(std::abs(emitted - sum / n) <= 1e-9 * std::abs(emitted));
  }

  std::map<std::string, std::string> before;
  for (const auto& name : tsv_names()) before[name] = read_file(dir / name);
  before["ledger.csv"] = read_file(dir / "ledger.csv");

  // Drop some records and rerun; completed ones are reused.
  int removed = 0;
  for (const auto& e : fs::directory_iterator(dir / "records")) {
    if (removed++ % 2 == 0) fs::remove(e.path());
  }
  const auto again = sweep_scale(cfg, dir);
  emit_tsv(again, dir);
  for (const auto& [name, text] : before) CHECK(read_file(dir / name) == text);

  // Determinism across worker counts and fresh directories.
  auto threaded = cfg;
  threaded.workers = 3;
  const auto dir2 = fresh_dir("acmn_sweep_threads");
  emit_tsv(sweep_scale(threaded, dir2), dir2);
  for (const auto& [name, text] : before) CHECK(read_file(dir2 / name) == text);

  // A directory holding another configuration is refused.
  auto other = cfg;
  other.master_seed = 99;
  CHECK_THROWS_AS(sweep_scale(other, dir), ConfigError);

  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("ellipticity sweep respects its targets") {
  const auto cfg = small_config(SweepAxis::NormalizedDiameter);
  const auto result = sweep_ellipticity(cfg);
  CHECK(result.records.size() + result.skipped.size() == 8);
  for (const auto& r : result.records) {
    CHECK(std::abs(r.normalized_diameter - cfg.axis_values[r.axis_index]) <= cfg.ellipticity_tolerance);
    CHECK(r.attempts >= 1);
  }
}

TEST_CASE("unreachable diameter targets are skipped, not fatal") {
  auto cfg = small_config(SweepAxis::NormalizedDiameter);
  cfg.axis_values = {9.0};
  cfg.ellipticity_max_attempts = 50;
  const auto result = sweep_ellipticity(cfg);
  CHECK(result.records.empty());
  CHECK(result.skipped.size() == 4);
  CHECK(result.infeasible == 0);
  CHECK(result.points.empty());
  CHECK_THROWS(emit_tsv(result, fs::temp_directory_path() / "acmn_empty"));
}

TEST_CASE("worker count resolution") {
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}
