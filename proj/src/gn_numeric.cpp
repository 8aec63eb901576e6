// Reference evaluation of the GN-model NLI integral.
//
// With u = f1 - f and v = f2 - f the per-span kernel is
//   |mu|^2 = (1 + a^2 - 2 a cos(theta L)) / (alpha^2 + theta^2),
//   theta = 4 pi^2 |beta2| u v,  a = exp(-alpha L).
// For fixed u the v-integral over an interval is closed-form in
// y = s v / alpha (s = 4 pi^2 |beta2| u):
//   [(1 + a^2)(atan y2 - atan y1) - 2a (F(y2) - F(y1))] / (alpha s),
//   F(y) = int_0^y cos(b t) / (1 + t^2) dt,  b = alpha L.
// F is tabulated once per call; the outer u-integral is adaptive
// Gauss-Kronrod between the points where the v-domain changes shape.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "acmn/physlayer.hpp"

namespace acmn {

namespace {

using constants::kPi;
using Interval = std::pair<double, double>;

class CosineLorentzIntegral {
 public:
  explicit CosineLorentzIntegral(double b) : b_(b) {
    const std::size_t n = static_cast<std::size_t>((kTableEnd - 1.0) / kStep) + 1;
    value_.resize(n);
    slope_.resize(n);
    double acc = small(1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double y = 1.0 + static_cast<double>(i) * kStep;
      if (i > 0) {
        acc += boost::math::quadrature::gauss<double, 7>::integrate([this](double t) { return integrand(t); },
                                                                    y - kStep, y);
      }
      value_[i] = acc;
      slope_[i] = integrand(y);
    }
    limit_ = kPi / 2.0 * std::exp(-b_);
  }

  double operator()(double y) const {
    if (y < 0.0) return -(*this)(-y);
    if (y <= 1.0) return small(y);
    if (y >= kTableEnd) {
      // First term of the asymptotic tail expansion.
      return limit_ + std::sin(b_ * y) / (b_ * (1.0 + y * y));
    }
    const double pos = (y - 1.0) / kStep;
    const auto i = std::min(static_cast<std::size_t>(pos), value_.size() - 2);
    const double t = pos - static_cast<double>(i);
    const double h = kStep;
    // Cubic Hermite with exact derivatives at the nodes.
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * value_[i] + h10 * h * slope_[i] + h01 * value_[i + 1] + h11 * h * slope_[i + 1];
  }

 private:
  static constexpr double kStep = 0.01;
  static constexpr double kTableEnd = 2.0e4;

  double integrand(double t) const { return std::cos(b_ * t) / (1.0 + t * t); }

  double small(double y) const {
    if (y == 0.0) return 0.0;
    return boost::math::quadrature::gauss<double, 30>::integrate([this](double t) { return integrand(t); }, 0.0, y);
  }

  double b_;
  double limit_ = 0.0;
  std::vector<double> value_;
  std::vector<double> slope_;
};

std::vector<Interval> occupied_spectrum(const ChannelGrid& grid, const LinkLoad& load, double centre) {
  std::vector<Interval> out;
  const double half = grid.symbol_rate_hz / 2.0;
  for (int k : load.channels()) {
    const double lo = grid.offset_hz(k) - centre - half;
    const double hi = grid.offset_hz(k) - centre + half;
    if (!out.empty() && lo <= out.back().second + 1e-6 * grid.symbol_rate_hz) {
      out.back().second = std::max(out.back().second, hi);
    } else {
      out.emplace_back(lo, hi);
    }
  }
  return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& x, const std::vector<Interval>& y) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].first, y[j].first);
    const double hi = std::min(x[i].second, y[j].second);
    if (hi > lo) out.emplace_back(lo, hi);
    if (x[i].second < y[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

}  // namespace

NumericEta nli_eta_numeric(const FiberParams& params, const ChannelGrid& grid, const LinkLoad& load, int channel,
                           const NumericOptions& opts) {
  if (!load.contains(channel)) throw PhysLayerError("channel " + std::to_string(channel) + " is not in the load");
  const double gamma = params.gamma_per_w_m();
  if (gamma == 0.0) return {};

  const double alpha = params.alpha_per_m();
  const double span = params.span_m();
  const double a = std::exp(-alpha * span);
  const double b = alpha * span;
  const double leff2 = std::pow(params.effective_length_m(), 2);
  const double c = 4.0 * kPi * kPi * std::abs(beta2(params));
  const CosineLorentzIntegral cosine(b);

  // Spectrum relative to the channel of interest.
  const auto spectrum = occupied_spectrum(grid, load, grid.offset_hz(channel));

  auto inner = [&](double u) {
    std::vector<Interval> shifted;
    shifted.reserve(spectrum.size());
    for (const auto& [lo, hi] : spectrum) shifted.emplace_back(lo - u, hi - u);
    double total = 0.0;
    const double s = c * u;
    for (const auto& [v1, v2] : intersect(spectrum, shifted)) {
      if (s == 0.0) {
        total += leff2 * (v2 - v1);
        continue;
      }
      const double y1 = s * v1 / alpha, y2 = s * v2 / alpha;
      total += ((1.0 + a * a) * (std::atan(y2) - std::atan(y1)) - 2.0 * a * (cosine(y2) - cosine(y1))) / (alpha * s);
    }
    return total;
  };

  // The v-domain changes shape where u equals a difference of spectrum edges.
  std::vector<double> edges;
  for (const auto& [lo, hi] : spectrum) {
    edges.push_back(lo);
    edges.push_back(hi);
  }
  std::vector<double> breaks;
  const double u_min = spectrum.front().first, u_max = spectrum.back().second;
  for (double e1 : edges) {
    breaks.push_back(e1);
    for (double e2 : edges) {
      const double d = e1 - e2;
      if (d > u_min && d < u_max) breaks.push_back(d);
    }
  }
  breaks.push_back(0.0);
  std::sort(breaks.begin(), breaks.end());
  const double merge_tol = 1e-9 * grid.symbol_rate_hz;
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [&](double x, double y) { return y - x < merge_tol; }),
               breaks.end());

  // Integrate in units of the symbol rate so that the quadrature's error
  // control sees O(1) interval lengths.
  const double unit = grid.symbol_rate_hz;
  auto scaled = [&](double x) { return inner(x * unit); };
  double integral = 0.0;
  double coarse = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i] / unit, hi = breaks[i + 1] / unit;
    const double mid = 0.5 * (lo + hi) * unit;
    // Skip gaps between occupied intervals.
    const bool occupied = std::any_of(spectrum.begin(), spectrum.end(),
                                      [&](const Interval& iv) { return mid > iv.first && mid < iv.second; });
    if (!occupied) continue;
    integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(scaled, lo, hi, opts.max_depth,
                                                                              opts.relative_tolerance);
    coarse += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(scaled, lo, hi, opts.max_depth,
                                                                            opts.relative_tolerance);
  }
  integral *= unit;
  coarse *= unit;
  const double bw = grid.symbol_rate_hz;
  const double scale = 16.0 / 27.0 * gamma * gamma / (bw * bw);
  NumericEta result;
  result.eta = scale * integral;
  result.error_estimate = scale * std::abs(integral - coarse);
  if (!(result.error_estimate <= opts.max_relative_error * std::abs(result.eta))) {
    throw PhysLayerError("GN integral did not converge: relative error estimate " +
                         std::to_string(result.error_estimate / std::abs(result.eta)));
  }
  return result;
}

}  // namespace acmn
