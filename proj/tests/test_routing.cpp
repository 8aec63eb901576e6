#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "acmn/geometry.hpp"
#include "acmn/physlayer.hpp"
#include "acmn/routing.hpp"
#include "acmn/seeding.hpp"
#include "oracles.hpp"

using namespace acmn;

namespace {

std::vector<double> floyd(const LogicalTopology& t, const std::vector<double>& w) {
  const int n = t.node_count;
  std::vector<double> d(n * n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (std::size_t l = 0; l < t.links.size(); ++l) {
    const auto [a, b] = t.links[l];
    d[a * n + b] = std::min(d[a * n + b], w[l]);
    d[b * n + a] = std::min(d[b * n + a], w[l]);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

CandidatePath with_capacity(double gbps) {
  CandidatePath p;
  p.capacity_bps = gbps * 1e9;
  return p;
}

}  // namespace

TEST_CASE("single link graph") {
  LogicalTopology t{"two", 2, {{0, 1}}};
  const auto paths = k_shortest_paths(t, std::vector<double>{0.5}, 0, 1, 10);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].nodes == std::vector<int>{0, 1});
  CHECK(paths[0].links == std::vector<int>{0});
  CHECK(paths[0].nsr == 0.5);
}

TEST_CASE("triangle with unit weights") {
  LogicalTopology t{"tri", 3, {{0, 1}, {0, 2}, {1, 2}}};
  const auto paths = k_shortest_paths(t, std::vector<double>{1, 1, 1}, 0, 1, 5);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<int>{0, 1});
  CHECK(paths[0].nsr == 1.0);
  CHECK(paths[1].nodes == std::vector<int>{0, 2, 1});
  CHECK(paths[1].nsr == 2.0);
  // Reverse direction returns the reversed routes.
  const auto back = k_shortest_paths(t, std::vector<double>{1, 1, 1}, 1, 0, 5);
  CHECK(back[0].nodes == std::vector<int>{1, 0});
}

TEST_CASE("unreachable destination") {
  LogicalTopology t{"split", 4, {{0, 1}, {2, 3}}};
  CHECK_THROWS_AS(k_shortest_paths(t, std::vector<double>{1, 1}, 0, 3, 3), NoPathError);
}

TEST_CASE("yen matches exhaustive enumeration on random graphs") {
  auto rng = make_engine(77);
  int compared = 0;
  for (int inst = 0; inst < 60; ++inst) {
    const int links = 8 + static_cast<int>(rng() % 9);
    const auto t = oracle::random_connected_graph(8, links, rng);
    std::vector<double> w(t.links.size());
    // Integer weights force many ties; real weights exercise the general case.
    const bool integer = inst % 2 == 0;
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (double& x : w) x = integer ? static_cast<double>(1 + rng() % 3) : u(rng);
    for (int src = 0; src < 8; ++src) {
      for (int dst = src + 1; dst < 8; ++dst) {
        const int k = 1 + static_cast<int>(rng() % 10);
        const auto got = k_shortest_paths(t, w, src, dst, k);
        const auto all = oracle::all_simple_paths(t, w, src, dst);
        const std::size_t expect = std::min<std::size_t>(k, all.size());
        REQUIRE(got.size() == expect);
        for (std::size_t i = 0; i < expect; ++i) {
          CHECK(got[i].nodes == all[i].nodes);
          CHECK(got[i].nsr == all[i].weight);
        }
        ++compared;
      }
    }
  }
  CHECK(compared == 60 * 28);
}

TEST_CASE("first path is the dijkstra shortest path") {
  auto rng = make_engine(8);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int inst = 0; inst < 30; ++inst) {
    const auto t = oracle::random_connected_graph(12, 20, rng);
    std::vector<double> w(t.links.size());
    for (double& x : w) x = u(rng);
    const auto d = floyd(t, w);
    for (int s = 0; s < 12; ++s) {
      for (int e = s + 1; e < 12; ++e) {
        CHECK(k_shortest_paths(t, w, s, e, 1)[0].nsr == doctest::Approx(d[s * 12 + e]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("nsr paths carry shannon capacities and planning weights") {
  const auto ref = load_nsfnet();
  const PhysicalLayer phy;
  const auto pt = make_physical(ref.topology, ref.link_km);
  const auto w = planning_link_nsr(pt, phy);
  REQUIRE(w.size() == 21);
  for (std::size_t l = 0; l < w.size(); ++l) CHECK(w[l] == pt.link_spans[l] * phy.full_load_nsr_per_span());
  const auto paths = k_shortest_nsr_paths(pt, w, {0, 13}, 10, phy);
  REQUIRE(paths.size() == 10);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CHECK(paths[i].capacity_bps == phy.capacity(paths[i].nsr));
    if (i) CHECK(paths[i].nsr >= paths[i - 1].nsr * (1.0 - 1e-12));
  }
}

TEST_CASE("relaxation filter") {
  const std::vector<CandidatePath> ranked{with_capacity(400), with_capacity(350), with_capacity(200)};
  CHECK(relax_filter({0, 1}, ranked, 0.8).paths.size() == 2);
  CHECK(relax_filter({0, 1}, ranked, 1.0).paths.size() == 1);
  CHECK(relax_filter({0, 1}, ranked, 0.0).paths.size() == 3);
  CHECK(relax_filter({0, 1}, ranked, 0.5).paths.size() == 3);
  const std::vector<CandidatePath> tied{with_capacity(300), with_capacity(300), with_capacity(100)};
  CHECK(relax_filter({0, 1}, tied, 1.0).paths.size() == 2);
  const auto set = relax_filter({2, 5}, ranked, 0.8);
  CHECK(set.pair == NodePair{2, 5});
  CHECK(set.relaxation == 0.8);
  CHECK(set.paths[0].capacity_bps == 400e9);
  CHECK_THROWS(relax_filter({0, 1}, {}, 0.5));
  CHECK_THROWS(relax_filter({0, 1}, ranked, 1.5));
}
