#pragma once

#include <span>
#include <stdexcept>

namespace acmn {

struct PointToPointLog {
  double exact = 0.0;   ///< log2(1 + snr1 / n_s)
  double approx = 0.0;  ///< log2(snr1) - log2(n_s)
};

/// Spectral efficiency (bit/symbol per polarisation) of a point-to-point
/// link of n_s identical spans whose single-span SNR is snr1.
PointToPointLog ptp_log_approx(double snr1, int n_s);

struct TwoLinkAverage {
  double sum_form = 0.0;     ///< log2(snr1/(n-d)) + log2(snr1/(n+d))
  double closed_form = 0.0;  ///< 2 log2(snr1) - log2(n^2 - d^2)
};

/// Combined high-SNR throughput of two links of n_s - delta and n_s + delta spans.
TwoLinkAverage two_link_average(double snr1, double n_s, double delta_n);

struct EnsembleStat {
  double parameter = 0.0;
  double mean = 0.0;
  double p16 = 0.0;
  double p84 = 0.0;
  std::size_t count = 0;
};

/// Linear interpolation between order statistics (p in [0, 1]).
double percentile(std::span<const double> samples, double p);

/// Mean and 16th/84th percentiles. Throws std::invalid_argument if empty.
EnsembleStat ensemble_stats(std::span<const double> samples, double parameter);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares fit of y = slope * log2(x) + intercept.
LogFit fit_log2(std::span<const double> x, std::span<const double> y);

}  // namespace acmn
