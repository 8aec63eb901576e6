#include "acmn/rwa.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <tuple>

#include "acmn/geometry.hpp"
#include "acmn/physlayer.hpp"
#include "acmn/seeding.hpp"

namespace acmn {

namespace {

// Per-link wavelength occupancy as packed bit words.
class OccupancyTable {
 public:
  OccupancyTable(int link_count, int wavelengths)
      : wavelengths_(wavelengths),
        words_((wavelengths + 63) / 64),
        bits_(static_cast<std::size_t>(link_count) * words_, 0),
        count_(static_cast<std::size_t>(link_count), 0) {}

  int count(int link) const { return count_[link]; }

  /// Lowest wavelength free on every link of the route, or -1.
  int first_common_free(const std::vector<int>& links) const {
    for (int w = 0; w < words_; ++w) {
      std::uint64_t used = 0;
      for (int l : links) used |= bits_[static_cast<std::size_t>(l) * words_ + w];
      std::uint64_t free = ~used;
      const int valid = std::min(64, wavelengths_ - 64 * w);
      if (valid < 64) free &= (std::uint64_t{1} << valid) - 1;
      if (free) return 64 * w + std::countr_zero(free);
    }
    return -1;
  }

  void occupy(const std::vector<int>& links, int wavelength) {
    const int w = wavelength / 64;
    const std::uint64_t bit = std::uint64_t{1} << (wavelength % 64);
    for (int l : links) {
      bits_[static_cast<std::size_t>(l) * words_ + w] |= bit;
      ++count_[l];
    }
  }

 private:
  int wavelengths_;
  int words_;
  std::vector<std::uint64_t> bits_;
  std::vector<int> count_;
};

struct Placement {
  int demand;
  int path;
  int wavelength;
};

struct Attempt {
  std::vector<Placement> placements;
  int max_occupancy = 0;
  long total_occupancy = 0;
};

// Greedy placement of the requests in the given order. Gives up once the
// running maximum exceeds `give_up_above`.
std::optional<Attempt> place_all(const std::vector<Demand>& demands, const std::vector<int>& order, int link_count,
                                 int wavelengths, int give_up_above) {
  OccupancyTable table(link_count, wavelengths);
  Attempt att;
  att.placements.reserve(order.size());
  for (int d : order) {
    const auto& paths = demands[d].paths;
    // (global max after, route max after, hops, wavelength, path index)
    using Key = std::tuple<int, int, std::size_t, int, int>;
    std::optional<Key> best;
    for (int p = 0; p < static_cast<int>(paths.size()); ++p) {
      const auto& links = paths[p].links;
      const int w = table.first_common_free(links);
      if (w < 0) continue;
      int route_max = 0;
      for (int l : links) route_max = std::max(route_max, table.count(l) + 1);
      Key key{std::max(att.max_occupancy, route_max), route_max, links.size(), w, p};
      if (!best || key < *best) best = key;
    }
    if (!best) return std::nullopt;
    const auto [global_after, route_max, hops, w, p] = *best;
    if (global_after > give_up_above) return std::nullopt;
    table.occupy(paths[p].links, w);
    att.max_occupancy = global_after;
    att.total_occupancy += static_cast<long>(hops);
    att.placements.push_back({d, p, w});
  }
  return att;
}

std::vector<int> base_order(const std::vector<Demand>& demands, int n_lambda) {
  std::vector<int> idx(demands.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto shortest_nsr = [&](int d) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : demands[d].paths) m = std::min(m, p.nsr);
    return m;
  };
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    const auto nx = demands[x].paths.size(), ny = demands[y].paths.size();
    if (nx != ny) return nx < ny;
    const double sx = shortest_nsr(x), sy = shortest_nsr(y);
    if (sx != sy) return sx > sy;
    return demands[x].pair < demands[y].pair;
  });
  std::vector<int> order;
  order.reserve(idx.size() * static_cast<std::size_t>(n_lambda));
  for (int d : idx) {
    for (int c = 0; c < n_lambda; ++c) order.push_back(d);
  }
  return order;
}

}  // namespace

std::optional<RwaSolution> assign_for_lambda(const std::vector<Demand>& demands, int link_count, int n_lambda,
                                             const RwaOptions& opts) {
  if (n_lambda < 1) throw std::invalid_argument("n_lambda must be at least 1");
  if (opts.wavelengths < 1) throw std::invalid_argument("at least one wavelength is required");
  for (const auto& d : demands) {
    if (d.paths.empty()) throw std::invalid_argument("every demand needs at least one candidate path");
  }

  const auto base = base_order(demands, n_lambda);
  std::optional<Attempt> best;
  const int restarts = std::max(1, opts.restarts);
  for (int r = 0; r < restarts; ++r) {
    auto order = base;
    if (r > 0) {
      auto rng = make_engine(derive_seed(opts.seed, {static_cast<std::uint64_t>(n_lambda),
                                                     static_cast<std::uint64_t>(r)}));
      std::shuffle(order.begin(), order.end(), rng);
    }
    const int cap = best ? best->max_occupancy : opts.wavelengths;
    auto att = place_all(demands, order, link_count, opts.wavelengths, cap);
    if (!att) continue;
    if (!best || std::tie(att->max_occupancy, att->total_occupancy) <
                     std::tie(best->max_occupancy, best->total_occupancy)) {
      best = std::move(att);
    }
  }
  if (!best) return std::nullopt;

  RwaSolution sol;
  sol.n_lambda = n_lambda;
  sol.wavelengths = opts.wavelengths;
  sol.link_channels.assign(static_cast<std::size_t>(link_count), {});
  std::vector<int> copies(demands.size(), 0);
  for (const auto& pl : best->placements) {
    const auto& path = demands[pl.demand].paths[pl.path];
    LightpathAssignment a;
    a.pair = demands[pl.demand].pair;
    a.copy = copies[pl.demand]++;
    a.wavelength = pl.wavelength;
    a.nodes = path.nodes;
    a.links = path.links;
    a.nsr = path.nsr;
    a.capacity_bps = path.capacity_bps;
    for (int l : a.links) sol.link_channels[l].push_back(a.wavelength);
    sol.assignments.push_back(std::move(a));
  }
  std::sort(sol.assignments.begin(), sol.assignments.end(), [](const auto& x, const auto& y) {
    return std::tie(x.pair, x.copy) < std::tie(y.pair, y.copy);
  });
  for (auto& ch : sol.link_channels) std::sort(ch.begin(), ch.end());
  sol.max_link_occupancy = best->max_occupancy;
  sol.total_occupancy = best->total_occupancy;
  return sol;
}

std::optional<RwaSolution> maximize_lambda(const std::vector<Demand>& demands, int link_count,
                                           const RwaOptions& opts) {
  std::optional<RwaSolution> last;
  for (int n = 1;; ++n) {
    auto sol = assign_for_lambda(demands, link_count, n, opts);
    if (!sol) break;
    last = std::move(sol);
  }
  return last;
}

RwaSolution final_throughput(RwaSolution sol, const PhysicalTopology& pt, const PhysicalLayer& phy) {
  if (sol.wavelengths > phy.channel_count()) {
    throw std::invalid_argument("solution uses more wavelengths than the channel grid provides");
  }
  // NSR of each occupied channel on each link under the link's actual load.
  std::vector<std::vector<double>> link_nsr(sol.link_channels.size());
  std::vector<LinkLoad> loads;
  loads.reserve(sol.link_channels.size());
  for (std::size_t l = 0; l < sol.link_channels.size(); ++l) {
    loads.emplace_back(sol.link_channels[l]);
    if (!loads.back().empty()) link_nsr[l] = phy.link_nsr_all(pt.link_spans[l], loads.back());
  }
  auto lookup = [&](int link, int channel) {
    const auto& ch = loads[link].channels();
    const auto it = std::lower_bound(ch.begin(), ch.end(), channel);
    return link_nsr[link][static_cast<std::size_t>(it - ch.begin())];
  };

  sol.total_capacity_bps = 0.0;
  for (auto& a : sol.assignments) {
    std::vector<double> per_link;
    per_link.reserve(a.links.size());
    for (int l : a.links) per_link.push_back(lookup(l, a.wavelength));
    a.nsr = path_nsr(per_link);
    a.capacity_bps = phy.capacity(a.nsr);
    sol.total_capacity_bps += a.capacity_bps;
  }
  sol.average_capacity_bps =
      sol.assignments.empty() ? 0.0 : sol.total_capacity_bps / static_cast<double>(sol.assignments.size());
  return sol;
}

}  // namespace acmn
