#include "acmn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/erf.hpp>

#include "acmn/seeding.hpp"

namespace acmn {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// Upper-tail probability Q(z) = 1 - Phi(z).
double std_normal_q(double z) {
  if (std::isinf(z)) return z > 0 ? 0.0 : 1.0;
  return 0.5 * std::erfc(z * kInvSqrt2);
}

double percentile_sorted(const std::vector<double>& v, double p) {
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Mean of N(mu, h^2) truncated to [lo, hi].
double truncated_normal_mean(double mu, double h, double lo, double hi) {
  const double a = (lo - mu) / h;
  const double b = (hi - mu) / h;
  const double mass = std_normal_q(a) - std_normal_q(b);
  if (mass <= 1e-300) return std::clamp(mu, lo, hi);
  const double pa = std_normal_pdf(a);
  const double pb = std::isinf(b) ? 0.0 : std_normal_pdf(b);
  return mu + h * (pa - pb) / mass;
}

double mixture_mean(const std::vector<double>& centres, double shift, double h, double lo, double hi) {
  double sum = 0.0;
  for (double c : centres) sum += truncated_normal_mean(c + shift, h, lo, hi);
  return sum / static_cast<double>(centres.size());
}

}  // namespace

double DistancePdf::sample_mean() const {
  return std::accumulate(samples_km.begin(), samples_km.end(), 0.0) / static_cast<double>(samples_km.size());
}

double DistancePdf::truncated_mean() const {
  return mixture_mean(samples_km, centre_shift_km, bandwidth_km, d_min_km, d_max_km);
}

double DistancePdf::density(double km) const {
  if (km <= d_min_km || km > d_max_km) return 0.0;
  double sum = 0.0;
  for (double c : samples_km) {
    const double mu = c + centre_shift_km;
    const double mass = std_normal_q((d_min_km - mu) / bandwidth_km) - std_normal_q((d_max_km - mu) / bandwidth_km);
    if (mass <= 0.0) continue;
    sum += std_normal_pdf((km - mu) / bandwidth_km) / (bandwidth_km * mass);
  }
  return sum / static_cast<double>(samples_km.size());
}

double DistancePdf::draw(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, samples_km.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double mu = samples_km[pick(rng)] + centre_shift_km;
  const double q_lo = std_normal_q((d_min_km - mu) / bandwidth_km);
  const double q_hi = std_normal_q((d_max_km - mu) / bandwidth_km);
  // Inverse-survival sampling inside (q_hi, q_lo) keeps the draw inside the support.
  for (;;) {
    const double u = q_hi + (q_lo - q_hi) * unit(rng);
    if (u <= 0.0 || u >= 1.0) continue;
    const double z = std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
    const double km = mu + bandwidth_km * z;
    if (km > d_min_km && km <= d_max_km) return km;
  }
}

double silverman_bandwidth(std::span<const double> samples) {
  const auto n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = percentile_sorted(sorted, 0.75) - percentile_sorted(sorted, 0.25);
  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  return 0.9 * spread * std::pow(n, -0.2);
}

DistancePdf fit_kde(std::span<const double> samples_km, double d_min_km) {
  if (samples_km.size() < 2) throw GeometryError("kernel density needs at least two samples");
  for (double x : samples_km) {
    if (!(x > 0.0) || !std::isfinite(x)) throw GeometryError("kernel density samples must be positive");
  }
  DistancePdf pdf;
  pdf.samples_km.assign(samples_km.begin(), samples_km.end());
  pdf.d_min_km = d_min_km;
  pdf.bandwidth_km = silverman_bandwidth(samples_km);
  if (!(pdf.bandwidth_km > 0.0)) throw GeometryError("kernel density samples have no spread");

  const double target = pdf.sample_mean();
  if (target <= d_min_km) throw GeometryError("sample mean lies below the truncation point");
  // Truncation only ever raises a kernel's mean, so the shift is <= 0.
  double lo = -(target - d_min_km) - 10.0 * pdf.bandwidth_km;
  double hi = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mixture_mean(pdf.samples_km, mid, pdf.bandwidth_km, pdf.d_min_km, pdf.d_max_km) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  pdf.centre_shift_km = 0.5 * (lo + hi);
  return pdf;
}

double PhysicalTopology::mean_link_km() const {
  return std::accumulate(link_km.begin(), link_km.end(), 0.0) / static_cast<double>(link_km.size());
}

int quantize_spans(double km, double span_km) {
  return std::max(1, static_cast<int>(std::lround(km / span_km)));
}

PhysicalTopology make_physical(LogicalTopology t, std::vector<double> link_km, double span_km) {
  if (link_km.size() != t.links.size()) throw GeometryError("one distance per link is required");
  PhysicalTopology pt;
  pt.logical = std::move(t);
  pt.link_km = std::move(link_km);
  pt.span_km = span_km;
  pt.link_spans.reserve(pt.link_km.size());
  for (double km : pt.link_km) {
    if (!(km > 0.0)) throw GeometryError("link distances must be positive");
    pt.link_spans.push_back(quantize_spans(km, span_km));
  }
  return pt;
}

PhysicalTopology assign_distances(const LogicalTopology& t, const DistancePdf& pdf, std::uint64_t seed,
                                  double span_km) {
  auto rng = make_engine(seed);
  std::vector<double> km(t.links.size());
  for (auto& d : km) d = pdf.draw(rng);
  return make_physical(t, std::move(km), span_km);
}

PhysicalTopology scale_to_mean(const PhysicalTopology& pt, double target_mean_km) {
  if (!(target_mean_km > 0.0)) throw GeometryError("target mean must be positive");
  const double factor = target_mean_km / pt.mean_link_km();
  std::vector<double> km = pt.link_km;
  if (factor != 1.0) {
    for (auto& d : km) d *= factor;
  }
  return make_physical(pt.logical, std::move(km), pt.span_km);
}

std::vector<double> shortest_path_km(const LogicalTopology& t, std::span<const double> link_km) {
  const auto n = static_cast<std::size_t>(t.node_count);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) dist[i * n + i] = 0.0;
  for (std::size_t l = 0; l < t.links.size(); ++l) {
    const auto a = static_cast<std::size_t>(t.links[l].a), b = static_cast<std::size_t>(t.links[l].b);
    dist[a * n + b] = std::min(dist[a * n + b], link_km[l]);
    dist[b * n + a] = dist[a * n + b];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = dist[i * n + k];
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + dist[k * n + j];
        if (via < dist[i * n + j]) dist[i * n + j] = via;
      }
    }
  }
  return dist;
}

PairDistanceSummary pair_distance_summary(const LogicalTopology& t, std::span<const double> link_km) {
  const auto dist = shortest_path_km(t, link_km);
  const auto n = static_cast<std::size_t>(t.node_count);
  PairDistanceSummary s;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = dist[i * n + j];
      if (std::isinf(d)) throw GeometryError("topology is disconnected");
      s.diameter_km = std::max(s.diameter_km, d);
      sum += d;
      ++count;
    }
  }
  if (count == 0) throw GeometryError("topology has no node pairs");
  s.mean_km = sum / static_cast<double>(count);
  return s;
}

double normalized_diameter(const PhysicalTopology& pt) {
  return pair_distance_summary(pt.logical, pt.link_km).normalized_diameter();
}

EllipticityDraw assign_with_ellipticity(const LogicalTopology& t, const EllipticityTarget& target,
                                        const DistancePdf& pdf, std::uint64_t seed, double span_km) {
  if (!(target.d_target >= 1.0)) throw GeometryError("normalised diameter target must be >= 1");
  if (!(target.tolerance > 0.0)) throw GeometryError("diameter tolerance must be positive");
  if (!(target.mean_node_pair_km > 0.0)) throw GeometryError("mean node-pair distance must be positive");

  auto rng = make_engine(seed);
  std::vector<double> km(t.links.size());
  for (long attempt = 1; attempt <= target.max_attempts; ++attempt) {
    for (auto& d : km) d = pdf.draw(rng);
    const auto summary = pair_distance_summary(t, km);
    if (std::abs(summary.normalized_diameter() - target.d_target) > target.tolerance) continue;

    const double factor = target.mean_node_pair_km / summary.mean_km;
    for (auto& d : km) d *= factor;
    EllipticityDraw out;
    out.topology = make_physical(t, km, span_km);
    out.attempts = attempt;
    out.achieved_d = normalized_diameter(out.topology);
    return out;
  }
  throw RejectionBudgetExhausted(target.max_attempts);
}

}  // namespace acmn
