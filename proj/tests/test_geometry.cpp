#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acmn/geometry.hpp"
#include "acmn/seeding.hpp"

using namespace acmn;

namespace {

// Independent Silverman oracle: sample sd and type-7 quartiles.
double silverman_oracle(std::vector<double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double pos = p * (n - 1.0);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - lo) * (v[hi] - v[lo]);
  };
  const double iqr = q(0.75) - q(0.25);
  return 0.9 * std::min(sd, iqr / 1.34) * std::pow(n, -0.2);
}

}  // namespace

TEST_CASE("silverman bandwidth matches a direct evaluation") {
  const auto ref = load_nsfnet();
  CHECK(silverman_bandwidth(ref.link_km) == doctest::Approx(silverman_oracle(ref.link_km)).epsilon(1e-12));
  const std::vector<double> small{1, 2, 3, 4, 10};
  CHECK(silverman_bandwidth(small) == doctest::Approx(silverman_oracle(small)).epsilon(1e-12));
}

TEST_CASE("kde rejects degenerate inputs") {
  CHECK_THROWS_AS(fit_kde(std::vector<double>{}), GeometryError);
  CHECK_THROWS_AS(fit_kde(std::vector<double>{500}), GeometryError);
  CHECK_THROWS_AS(fit_kde(std::vector<double>{500, 500, 500}), GeometryError);
  CHECK_THROWS_AS(fit_kde(std::vector<double>{500, -3}), GeometryError);
}

TEST_CASE("nsfnet density keeps its mean and stays above one span") {
  const auto ref = load_nsfnet();
  const auto pdf = fit_kde(ref.link_km);
  auto rng = make_engine(2024);
  double sum = 0.0, lo = 1e300;
  const int n = 1000000;
  int bulk = 0;
  for (int i = 0; i < n; ++i) {
    const double d = pdf.draw(rng);
    sum += d;
    lo = std::min(lo, d);
    if (d >= 250.0 && d <= 3700.0) ++bulk;
  }
  const double mean = sum / n;
  MESSAGE("mean of 10^6 draws " << mean << " km, sample mean " << pdf.sample_mean());
  CHECK(std::abs(mean / 1463.0 - 1.0) <= 0.02);
  CHECK(lo >= pdf.d_min_km);
  CHECK(static_cast<double>(bulk) / n >= 0.9);
  CHECK(pdf.truncated_mean() == doctest::Approx(pdf.sample_mean()).epsilon(1e-6));
}

TEST_CASE("draws from nearly identical samples concentrate") {
  const auto pdf = fit_kde(std::vector<double>{1000.0, 1000.5, 999.5, 1000.2});
  auto rng = make_engine(3);
  for (int i = 0; i < 1000; ++i) CHECK(std::abs(pdf.draw(rng) - 1000.0) < 10.0);
}

TEST_CASE("span quantization") {
  CHECK(quantize_spans(1463) == 18);
  CHECK(quantize_spans(30) == 1);
  CHECK(quantize_spans(80) == 1);
  CHECK(quantize_spans(119.9) == 1);
  CHECK(quantize_spans(120) == 2);
  CHECK(quantize_spans(3040) == 38);
  for (double km = 1.0; km < 5000.0; km += 7.3) {
    const int s = quantize_spans(km);
    if (km >= 40.0) CHECK(std::abs(s * 80.0 - km) <= 40.0);
    else CHECK(s == 1);
  }
}

TEST_CASE("distance assignment draws one value per link and is seeded") {
  const auto ref = load_nsfnet();
  const auto pdf = fit_kde(ref.link_km);
  const auto a = assign_distances(ref.topology, pdf, 11);
  const auto b = assign_distances(ref.topology, pdf, 11);
  const auto c = assign_distances(ref.topology, pdf, 12);
  CHECK(a.link_km.size() == 21);
  CHECK(a.link_km == b.link_km);
  CHECK(a.link_km != c.link_km);
  for (std::size_t i = 0; i < a.link_km.size(); ++i) CHECK(a.link_spans[i] == quantize_spans(a.link_km[i]));
}

TEST_CASE("scaling to a target mean") {
  LogicalTopology two{"two", 3, {{0, 1}, {1, 2}}};
  const auto pt = make_physical(two, {800, 1600});
  const auto scaled = scale_to_mean(pt, 1800);
  CHECK(scaled.link_km[0] == doctest::Approx(1200));
  CHECK(scaled.link_km[1] == doctest::Approx(2400));
  CHECK(scaled.link_spans == std::vector<int>{15, 30});

  const auto ref = load_nsfnet();
  const auto ns = make_physical(ref.topology, ref.link_km);
  const auto same = scale_to_mean(ns, ns.mean_link_km());
  for (std::size_t i = 0; i < ns.link_km.size(); ++i) CHECK(same.link_km[i] == doctest::Approx(ns.link_km[i]));
  const auto big = scale_to_mean(ns, 3040);
  CHECK(big.link_km[0] / ns.link_km[0] == doctest::Approx(3040.0 / ns.mean_link_km()));
  CHECK(big.mean_link_km() == doctest::Approx(3040));
  CHECK_THROWS(scale_to_mean(ns, 0.0));
}

TEST_CASE("normalized diameter") {
  LogicalTopology tri{"tri", 3, {{0, 1}, {1, 2}, {0, 2}}};
  CHECK(normalized_diameter(make_physical(tri, {500, 500, 500})) == doctest::Approx(1.0));
  LogicalTopology path{"path", 3, {{0, 1}, {1, 2}}};
  CHECK(normalized_diameter(make_physical(path, {1, 1})) == doctest::Approx(1.5));

  const auto ref = load_nsfnet();
  const auto ns = make_physical(ref.topology, ref.link_km);
  CHECK(normalized_diameter(ns) == doctest::Approx(2.13).epsilon(0.005));
  CHECK(pair_distance_summary(ref.topology, ref.link_km).mean_km == doctest::Approx(3070).epsilon(0.001));

  LogicalTopology split{"split", 4, {{0, 1}, {2, 3}}};
  CHECK_THROWS_AS(normalized_diameter(make_physical(split, {1, 1})), GeometryError);
}

TEST_CASE("normalized diameter is invariant under uniform scaling") {
  const auto ref = load_nsfnet();
  const auto pdf = fit_kde(ref.link_km);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = generate_acmn(seed);
    const auto pt = assign_distances(t, pdf, seed);
    for (double f : {0.25, 0.5, 2.0, 4.0}) {
      auto km = pt.link_km;
      for (double& d : km) d *= f;
      const auto s = pair_distance_summary(t, km);
      CHECK(s.normalized_diameter() == doctest::Approx(normalized_diameter(pt)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ellipticity-constrained assignment") {
  const auto ref = load_nsfnet();
  const auto pdf = fit_kde(ref.link_km);
  EllipticityTarget target;
  target.d_target = 2.13;
  const auto draw = assign_with_ellipticity(ref.topology, target, pdf, 5);
  CHECK(std::abs(draw.achieved_d - 2.13) <= target.tolerance);
  CHECK(std::abs(normalized_diameter(draw.topology) - 2.13) <= target.tolerance);
  CHECK(pair_distance_summary(draw.topology.logical, draw.topology.link_km).mean_km ==
        doctest::Approx(3070).epsilon(1e-12));
  CHECK(draw.attempts >= 1);

  const auto again = assign_with_ellipticity(ref.topology, target, pdf, 5);
  CHECK(again.topology.link_km == draw.topology.link_km);

  // A ring cannot be made elliptic beyond its symmetric bound.
  LogicalTopology ring{"ring", 3, {{0, 1}, {1, 2}, {0, 2}}};
  EllipticityTarget impossible;
  impossible.d_target = 5.0;
  impossible.max_attempts = 200;
  CHECK_THROWS_AS(assign_with_ellipticity(ring, impossible, pdf, 1), RejectionBudgetExhausted);
}

TEST_CASE("ellipticity acceptance rate across targets") {
  const auto ref = load_nsfnet();
  const auto pdf = fit_kde(ref.link_km);
  for (double d : {1.7, 2.0, 2.3, 2.6, 3.0}) {
    EllipticityTarget target;
    target.d_target = d;
    long attempts = 0;
    int accepted = 0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      try {
        attempts += assign_with_ellipticity(generate_acmn(s), target, pdf, s).attempts;
        ++accepted;
      } catch (const RejectionBudgetExhausted& e) {
        attempts += e.attempts();
      }
    }
    MESSAGE("D " << d << ": acceptance rate " << accepted / static_cast<double>(attempts));
  }
}
