#include "acmn/physlayer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace acmn {

using constants::kPi;

double FiberParams::alpha_per_m() const { return alpha_db_per_km * std::log(10.0) / 10.0 * 1e-3; }

double FiberParams::span_gain() const { return std::pow(10.0, alpha_db_per_km * span_km / 10.0); }

double FiberParams::effective_length_m() const {
  const double a = alpha_per_m();
  if (a == 0.0) return span_m();
  return -std::expm1(-a * span_m()) / a;
}

double FiberParams::reference_frequency_hz() const { return constants::kSpeedOfLight / (wavelength_nm * 1e-9); }

int ChannelGrid::channel_count() const {
  return static_cast<int>(std::floor(band_hz / spacing_hz + 1e-9));
}

double ChannelGrid::offset_hz(int channel) const {
  return (channel - (channel_count() - 1) / 2.0) * spacing_hz;
}

LinkLoad::LinkLoad(std::vector<int> channels) : channels_(std::move(channels)) {
  std::sort(channels_.begin(), channels_.end());
  channels_.erase(std::unique(channels_.begin(), channels_.end()), channels_.end());
}

LinkLoad LinkLoad::full(const ChannelGrid& grid) {
  std::vector<int> all(static_cast<std::size_t>(grid.channel_count()));
  std::iota(all.begin(), all.end(), 0);
  return LinkLoad(std::move(all));
}

bool LinkLoad::contains(int channel) const {
  return std::binary_search(channels_.begin(), channels_.end(), channel);
}

double beta2(const FiberParams& p) {
  const double d_s_per_m2 = p.dispersion_ps_per_nm_km * 1e-12 / (1e-9 * 1e3);
  const double lambda = p.wavelength_nm * 1e-9;
  return -d_s_per_m2 * lambda * lambda / (2.0 * kPi * constants::kSpeedOfLight);
}

double ase_power_per_span(const FiberParams& p, const ChannelGrid& grid) {
  const double nf = std::pow(10.0, p.nf_db / 10.0);
  return nf * constants::kPlanck * p.reference_frequency_hz() * (p.span_gain() - 1.0) * grid.symbol_rate_hz;
}

namespace {

// asinh(x) / x with the x -> 0 limit.
double asinh_ratio(double x) { return std::abs(x) < 1e-12 ? 1.0 : std::asinh(x) / x; }
double atan_ratio(double x) { return std::abs(x) < 1e-12 ? 1.0 : std::atan(x) / x; }

double spm_eta(const FiberParams& p, const ChannelGrid& grid) {
  const double b2 = std::abs(beta2(p));
  const double leff = p.effective_length_m();
  const double leff_a = 1.0 / p.alpha_per_m();
  const double bw = grid.symbol_rate_hz;
  const double gamma = p.gamma_per_w_m();
  // (8/27) g^2 Leff^2 asinh(x) / (pi |b2| Leffa B^2), x = pi^2/2 |b2| Leffa B^2
  const double x = kPi * kPi / 2.0 * b2 * leff_a * bw * bw;
  return 8.0 / 27.0 * gamma * gamma * leff * leff * asinh_ratio(x) * kPi / 2.0;
}

double xpm_eta(const FiberParams& p, const ChannelGrid& grid, double offset_hz) {
  const double b2 = std::abs(beta2(p));
  const double alpha = p.alpha_per_m();
  const double leff = p.effective_length_m();
  const double gamma = p.gamma_per_w_m();
  const double bi = grid.symbol_rate_hz;
  const double bk = grid.symbol_rate_hz;
  const double df = std::abs(offset_hz);
  // (16/27) g^2 alpha Leff^2 atan(y) / (pi^2 |b2| df Bk), y = 2 pi^2 |b2| df Bi / alpha
  const double y = 2.0 * kPi * kPi * b2 * df * bi / alpha;
  return 16.0 / 27.0 * gamma * gamma * leff * leff * atan_ratio(y) * 2.0 * bi / bk;
}

}  // namespace

double nli_eta_closed_form(const FiberParams& params, const ChannelGrid& grid, const LinkLoad& load, int channel) {
  if (!load.contains(channel)) throw PhysLayerError("channel " + std::to_string(channel) + " is not in the load");
  double eta = spm_eta(params, grid);
  const double f0 = grid.offset_hz(channel);
  for (int k : load.channels()) {
    if (k == channel) continue;
    eta += xpm_eta(params, grid, grid.offset_hz(k) - f0);
  }
  return eta;
}

double logon_power(double p_ase, double eta) {
  if (!(p_ase > 0.0) || !(eta > 0.0)) throw PhysLayerError("LOGON needs positive ASE power and NLI coefficient");
  return std::cbrt(p_ase / (2.0 * eta));
}

namespace {

double nsr_at_logon(double p_ase, double eta) {
  const double p = logon_power(p_ase, eta);
  return (p_ase + eta * p * p * p) / p;
}

}  // namespace

double link_nsr(const FiberParams& params, const ChannelGrid& grid, int spans, const LinkLoad& load, int channel) {
  if (spans < 1) throw PhysLayerError("a link has at least one span");
  const double eta = nli_eta_closed_form(params, grid, load, channel);
  return spans * nsr_at_logon(ase_power_per_span(params, grid), eta);
}

double path_nsr(std::span<const double> link_nsrs) {
  if (link_nsrs.empty()) throw PhysLayerError("a path has at least one link");
  double sum = 0.0;
  for (double x : link_nsrs) sum += x;
  return sum;
}

double shannon_capacity(double nsr, const ChannelGrid& grid) {
  if (!(nsr > 0.0)) throw PhysLayerError("NSR must be positive");
  return 2.0 * grid.symbol_rate_hz * std::log2(1.0 + 1.0 / nsr);
}

PhysicalLayer::PhysicalLayer(const FiberParams& params, const ChannelGrid& grid)
    : params_(params), grid_(grid), channel_count_(grid.channel_count()) {
  if (channel_count_ < 1) throw PhysLayerError("channel grid holds no channels");
  p_ase_ = ase_power_per_span(params_, grid_);
  spm_ = spm_eta(params_, grid_);
  xpm_by_offset_.assign(static_cast<std::size_t>(channel_count_), 0.0);
  for (int d = 1; d < channel_count_; ++d) xpm_by_offset_[d] = xpm_eta(params_, grid_, d * grid_.spacing_hz);

  const auto full = LinkLoad::full(grid_);
  double worst = 0.0;
  for (int ch = 0; ch < channel_count_; ++ch) worst = std::max(worst, nsr_per_span(full, ch));
  full_load_nsr_per_span_ = worst;
}

double PhysicalLayer::eta_from_occupancy(const std::vector<int>& channels, int channel) const {
  double eta = spm_;
  for (int k : channels) {
    if (k != channel) eta += xpm_by_offset_[static_cast<std::size_t>(std::abs(k - channel))];
  }
  return eta;
}

double PhysicalLayer::eta(const LinkLoad& load, int channel) const {
  if (!load.contains(channel)) throw PhysLayerError("channel " + std::to_string(channel) + " is not in the load");
  return eta_from_occupancy(load.channels(), channel);
}

double PhysicalLayer::nsr_per_span(const LinkLoad& load, int channel) const {
  return nsr_at_logon(p_ase_, eta(load, channel));
}

double PhysicalLayer::link_nsr(int spans, const LinkLoad& load, int channel) const {
  if (spans < 1) throw PhysLayerError("a link has at least one span");
  return spans * nsr_per_span(load, channel);
}

std::vector<double> PhysicalLayer::link_nsr_all(int spans, const LinkLoad& load) const {
  if (spans < 1) throw PhysLayerError("a link has at least one span");
  std::vector<double> out;
  out.reserve(load.size());
  for (int ch : load.channels()) {
    out.push_back(spans * nsr_at_logon(p_ase_, eta_from_occupancy(load.channels(), ch)));
  }
  return out;
}

}  // namespace acmn
