#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace acmn {

namespace constants {
inline constexpr double kSpeedOfLight = 299792458.0;    // m/s
inline constexpr double kPlanck = 6.62607015e-34;       // J s
inline constexpr double kPi = 3.14159265358979323846;
}  // namespace constants

/// Standard single-mode fibre with lumped EDFA amplification per span.
struct FiberParams {
  double alpha_db_per_km = 0.2;
  double dispersion_ps_per_nm_km = 18.0;
  double gamma_per_w_km = 1.2;
  double span_km = 80.0;
  double nf_db = 4.0;
  double wavelength_nm = 1550.0;

  /// Power attenuation in 1/m (nepers on power).
  double alpha_per_m() const;
  double gamma_per_w_m() const { return gamma_per_w_km * 1e-3; }
  double span_m() const { return span_km * 1e3; }
  double span_gain() const;
  double effective_length_m() const;
  /// Reference optical frequency c / lambda, used for every channel.
  double reference_frequency_hz() const;
};

/// Nyquist WDM grid filling a fixed optical band.
struct ChannelGrid {
  double symbol_rate_hz = 32e9;
  double spacing_hz = 32e9;
  double band_hz = 5e12;

  int channel_count() const;
  /// Centre frequency of channel i relative to the band centre.
  double offset_hz(int channel) const;
};

/// Set of occupied channel indices on one link, kept sorted and unique.
class LinkLoad {
 public:
  LinkLoad() = default;
  explicit LinkLoad(std::vector<int> channels);
  static LinkLoad full(const ChannelGrid& grid);

  bool contains(int channel) const;
  const std::vector<int>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  bool empty() const { return channels_.empty(); }

 private:
  std::vector<int> channels_;
};

class PhysLayerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Group velocity dispersion -D lambda^2 / (2 pi c) in s^2/m.
double beta2(const FiberParams& params);

/// ASE power per span in the channel bandwidth:
/// NF * h * nu * (G - 1) * symbol rate, with G compensating the span loss.
double ase_power_per_span(const FiberParams& params, const ChannelGrid& grid);

/// Per-span NLI coefficient (1/W^2) of `channel` under `load`, such that
/// P_NLI = eta * P^3 for a uniform launch power P. Closed form: an asinh
/// self-channel term plus one arctan term per occupied interferer.
/// Throws PhysLayerError if the channel is not part of the load.
double nli_eta_closed_form(const FiberParams& params, const ChannelGrid& grid, const LinkLoad& load,
                           int channel);

struct NumericEta {
  double eta = 0.0;
  double error_estimate = 0.0;
};

struct NumericOptions {
  double relative_tolerance = 1e-7;
  unsigned max_depth = 18;
  /// Disagreement between two quadrature orders above which the result is rejected.
  double max_relative_error = 1e-4;
};

/// Reference evaluation of the GN double integral over the occupied
/// rectangular spectra at the centre frequency of `channel`. Slow. Throws
/// PhysLayerError when two quadrature orders disagree beyond tolerance.
NumericEta nli_eta_numeric(const FiberParams& params, const ChannelGrid& grid, const LinkLoad& load, int channel,
                           const NumericOptions& opts = {});

/// Launch power maximising P / (P_ASE + eta P^3): (P_ASE / (2 eta))^(1/3).
double logon_power(double p_ase, double eta);

/// NSR of a link of `spans` identical spans; contributions add incoherently.
double link_nsr(const FiberParams& params, const ChannelGrid& grid, int spans, const LinkLoad& load, int channel);

double path_nsr(std::span<const double> link_nsrs);

/// Dual-polarisation Shannon capacity 2 * B * log2(1 + 1/NSR) in bit/s.
double shannon_capacity(double nsr, const ChannelGrid& grid);

/// Precomputed closed-form model for fast repeated NSR evaluation. The
/// self-channel value and the per-offset interferer terms are tabulated
/// once per (fibre, grid).
class PhysicalLayer {
 public:
  PhysicalLayer(const FiberParams& params = {}, const ChannelGrid& grid = {});

  const FiberParams& params() const { return params_; }
  const ChannelGrid& grid() const { return grid_; }
  int channel_count() const { return channel_count_; }
  double ase_power() const { return p_ase_; }

  double eta(const LinkLoad& load, int channel) const;
  /// Per-span NSR at the LOGON launch power.
  double nsr_per_span(const LinkLoad& load, int channel) const;
  double link_nsr(int spans, const LinkLoad& load, int channel) const;
  /// NSR of every occupied channel of a link, in load order.
  std::vector<double> link_nsr_all(int spans, const LinkLoad& load) const;
  /// Worst-channel (band-centre) NSR per span under full load; the
  /// planning weight used before routing.
  double full_load_nsr_per_span() const { return full_load_nsr_per_span_; }
  double capacity(double nsr) const { return shannon_capacity(nsr, grid_); }

 private:
  double eta_from_occupancy(const std::vector<int>& channels, int channel) const;

  FiberParams params_;
  ChannelGrid grid_;
  int channel_count_ = 0;
  double p_ase_ = 0.0;
  double spm_ = 0.0;
  std::vector<double> xpm_by_offset_;
  double full_load_nsr_per_span_ = 0.0;
};

}  // namespace acmn
