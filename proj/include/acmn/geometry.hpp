#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "acmn/topology.hpp"

namespace acmn {

inline constexpr double kDefaultSpanKm = 80.0;

/// Gaussian kernel density over link distances, truncated below at d_min.
struct DistancePdf {
  std::vector<double> samples_km;
  double bandwidth_km = 0.0;
  double d_min_km = kDefaultSpanKm;
  double d_max_km = std::numeric_limits<double>::infinity();
  /// Common shift of all kernel centres that makes the truncated mixture
  /// mean equal the sample mean.
  double centre_shift_km = 0.0;

  double sample_mean() const;
  /// Mean of the truncated mixture as sampled by draw().
  double truncated_mean() const;
  double density(double km) const;
  double draw(std::mt19937_64& rng) const;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Silverman rule of thumb, 0.9 * min(sd, IQR/1.34) * n^(-1/5).
double silverman_bandwidth(std::span<const double> samples);

/// Throws GeometryError for fewer than two samples, non-positive samples or
/// zero spread.
DistancePdf fit_kde(std::span<const double> samples_km, double d_min_km = kDefaultSpanKm);

struct PhysicalTopology {
  LogicalTopology logical;
  std::vector<double> link_km;
  std::vector<int> link_spans;
  double span_km = kDefaultSpanKm;

  double mean_link_km() const;
};

/// max(1, round(km / span_km)).
int quantize_spans(double km, double span_km = kDefaultSpanKm);

PhysicalTopology make_physical(LogicalTopology t, std::vector<double> link_km,
                               double span_km = kDefaultSpanKm);

PhysicalTopology assign_distances(const LogicalTopology& t, const DistancePdf& pdf, std::uint64_t seed,
                                  double span_km = kDefaultSpanKm);

/// Multiplies every link length by target / current mean and re-quantizes spans.
PhysicalTopology scale_to_mean(const PhysicalTopology& pt, double target_mean_km);

/// All-pairs shortest path distances in km (row-major n x n).
std::vector<double> shortest_path_km(const LogicalTopology& t, std::span<const double> link_km);

struct PairDistanceSummary {
  double diameter_km = 0.0;
  double mean_km = 0.0;
  double normalized_diameter() const { return diameter_km / mean_km; }
};

/// Throws GeometryError for disconnected graphs.
PairDistanceSummary pair_distance_summary(const LogicalTopology& t, std::span<const double> link_km);

/// Longest km-shortest path over node pairs divided by the mean over node pairs.
double normalized_diameter(const PhysicalTopology& pt);

struct EllipticityTarget {
  double d_target = 2.13;
  double tolerance = 0.02;
  double mean_node_pair_km = 3070.0;
  long max_attempts = 100000;
};

struct EllipticityDraw {
  PhysicalTopology topology;
  long attempts = 0;
  double achieved_d = 0.0;
};

class RejectionBudgetExhausted : public GeometryError {
 public:
  explicit RejectionBudgetExhausted(long attempts)
      : GeometryError("no distance realisation met the diameter target in " + std::to_string(attempts) +
                      " attempts"),
        attempts_(attempts) {}
  long attempts() const { return attempts_; }

 private:
  long attempts_;
};

/// Rejection-samples link distances until |D - target| <= tolerance, then
/// rescales so that the mean node-pair distance equals mean_node_pair_km.
EllipticityDraw assign_with_ellipticity(const LogicalTopology& t, const EllipticityTarget& target,
                                        const DistancePdf& pdf, std::uint64_t seed,
                                        double span_km = kDefaultSpanKm);

}  // namespace acmn
