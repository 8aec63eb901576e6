#include "acmn/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace acmn {

PointToPointLog ptp_log_approx(double snr1, int n_s) {
  if (!(snr1 > 0.0)) throw std::invalid_argument("single-span SNR must be positive");
  if (n_s < 1) throw std::invalid_argument("span count must be at least 1");
  return {std::log2(1.0 + snr1 / n_s), std::log2(snr1) - std::log2(static_cast<double>(n_s))};
}

TwoLinkAverage two_link_average(double snr1, double n_s, double delta_n) {
  if (!(snr1 > 0.0)) throw std::invalid_argument("single-span SNR must be positive");
  if (!(delta_n >= 0.0) || !(delta_n < n_s)) throw std::invalid_argument("span offset must satisfy 0 <= delta < n_s");
  TwoLinkAverage out;
  out.sum_form = std::log2(snr1 / (n_s - delta_n)) + std::log2(snr1 / (n_s + delta_n));
  out.closed_form = 2.0 * std::log2(snr1) - std::log2(n_s * n_s - delta_n * delta_n);
  return out;
}

double percentile(std::span<const double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("percentile of an empty sample");
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

EnsembleStat ensemble_stats(std::span<const double> samples, double parameter) {
  if (samples.empty()) throw std::invalid_argument("ensemble statistics of an empty sample");
  EnsembleStat s;
  s.parameter = parameter;
  s.count = samples.size();
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  s.p16 = percentile(samples, 0.16);
  s.p84 = percentile(samples, 0.84);
  return s;
}

LogFit fit_log2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs at least two paired points");
  const auto n = static_cast<double>(x.size());
  std::vector<double> lx(x.size());
  std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log2(v); });
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LogFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * lx[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace acmn
