#include "acmn/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace acmn {

using nlohmann::json;

json topology_to_json(const LogicalTopology& t) {
  json links = json::array();
  for (const auto& l : t.links) links.push_back({l.a, l.b});
  return json{{"name", t.name}, {"nodes", t.node_count}, {"links", links}};
}

json physical_to_json(const PhysicalTopology& pt) {
  json j = topology_to_json(pt.logical);
  j["length_km"] = pt.link_km;
  j["spans"] = pt.link_spans;
  return j;
}

TopologyFile topology_from_json(const json& j) {
  TopologyFile f;
  try {
    f.topology.name = j.value("name", std::string{});
    f.topology.node_count = j.at("nodes").get<int>();
    for (const auto& l : j.at("links")) {
      if (!l.is_array() || l.size() != 2) throw ConfigError("each link must be a [a, b] pair");
      f.topology.links.push_back(make_link(l[0].get<int>(), l[1].get<int>()));
    }
    if (j.contains("length_km")) f.length_km = j["length_km"].get<std::vector<double>>();
    if (j.contains("spans")) f.spans = j["spans"].get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed topology: ") + e.what());
  }
  if (f.length_km && f.length_km->size() != f.topology.links.size()) {
    throw ConfigError("length_km must hold one entry per link");
  }
  if (f.spans && f.spans->size() != f.topology.links.size()) throw ConfigError("spans must hold one entry per link");
  return f;
}

TopologyFile read_topology_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  try {
    return topology_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json fiber_to_json(const FiberParams& p) {
  return json{{"alpha_db_per_km", p.alpha_db_per_km},
              {"dispersion_ps_per_nm_km", p.dispersion_ps_per_nm_km},
              {"gamma_per_w_km", p.gamma_per_w_km},
              {"span_km", p.span_km},
              {"nf_db", p.nf_db},
              {"wavelength_nm", p.wavelength_nm}};
}

json grid_to_json(const ChannelGrid& g) {
  return json{{"symbol_rate_hz", g.symbol_rate_hz}, {"spacing_hz", g.spacing_hz}, {"band_hz", g.band_hz}};
}

namespace {

template <class T>
void override_fields(const json& j, T& target, const std::map<std::string, double T::*>& fields,
                     const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be an object");
  for (const auto& [key, value] : j.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError("unknown " + what + " key '" + key + "'");
    if (!value.is_number()) throw ConfigError(what + "." + key + " must be a number");
    target.*(it->second) = value.template get<double>();
  }
}

}  // namespace

FiberParams fiber_from_json(const json& j, FiberParams p) {
  override_fields<FiberParams>(j, p,
                               {{"alpha_db_per_km", &FiberParams::alpha_db_per_km},
                                {"dispersion_ps_per_nm_km", &FiberParams::dispersion_ps_per_nm_km},
                                {"gamma_per_w_km", &FiberParams::gamma_per_w_km},
                                {"span_km", &FiberParams::span_km},
                                {"nf_db", &FiberParams::nf_db},
                                {"wavelength_nm", &FiberParams::wavelength_nm}},
                               "fiber");
  if (!(p.alpha_db_per_km > 0 && p.span_km > 0 && p.wavelength_nm > 0 && p.gamma_per_w_km >= 0)) {
    throw ConfigError("fiber parameters must be positive");
  }
  return p;
}

ChannelGrid grid_from_json(const json& j, ChannelGrid g) {
  override_fields<ChannelGrid>(j, g,
                               {{"symbol_rate_hz", &ChannelGrid::symbol_rate_hz},
                                {"spacing_hz", &ChannelGrid::spacing_hz},
                                {"band_hz", &ChannelGrid::band_hz}},
                               "grid");
  if (!(g.symbol_rate_hz > 0 && g.spacing_hz > 0 && g.band_hz >= g.spacing_hz)) {
    throw ConfigError("grid parameters must be positive and hold at least one channel");
  }
  return g;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string join_nodes(const std::vector<int>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(nodes[i]);
  }
  return s;
}

std::vector<int> split_nodes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, '-')) out.push_back(std::stoi(item));
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, '\t')) out.push_back(item);
  return out;
}

struct SolutionRow {
  NodePair pair;
  int copy;
  int wavelength;
  std::vector<int> nodes;
  double nsr;
  double capacity_bps;
};

std::vector<SolutionRow> parse_solution_rows(const std::string& text) {
  std::vector<SolutionRow> rows;
  std::stringstream in(text);
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("pair", 0) == 0) continue;
    }
    const auto cols = split_tabs(line);
    if (cols.size() != 6) throw ConfigError("solution line " + std::to_string(lineno) + ": expected 6 columns");
    try {
      SolutionRow r;
      const auto ends = split_nodes(cols[0]);
      if (ends.size() != 2) throw ConfigError("bad pair");
      r.pair = {std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
      r.copy = std::stoi(cols[1]);
      r.wavelength = std::stoi(cols[2]);
      r.nodes = split_nodes(cols[3]);
      r.nsr = std::stod(cols[4]);
      r.capacity_bps = std::stod(cols[5]) * 1e9;
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ConfigError("solution line " + std::to_string(lineno) + ": unparsable field");
    }
  }
  return rows;
}

}  // namespace

std::string solution_to_tsv(const RwaSolution& sol) {
  std::string out = "pair\tcopy\twavelength\tnodes\tnsr\tcapacity_gbps\n";
  for (const auto& a : sol.assignments) {
    out += std::to_string(a.pair.a) + "-" + std::to_string(a.pair.b) + "\t" + std::to_string(a.copy) + "\t" +
           std::to_string(a.wavelength) + "\t" + join_nodes(a.nodes) + "\t" + format_number(a.nsr) + "\t" +
           format_number(a.capacity_bps / 1e9) + "\n";
  }
  return out;
}

RwaSolution solution_from_tsv(const std::string& text, const LogicalTopology& t, int wavelengths) {
  std::map<Link, int> index;
  for (std::size_t i = 0; i < t.links.size(); ++i) index[t.links[i]] = static_cast<int>(i);

  RwaSolution sol;
  sol.wavelengths = wavelengths;
  std::map<NodePair, int> per_pair;
  std::vector<int> occupancy(t.links.size(), 0);
  for (auto& r : parse_solution_rows(text)) {
    LightpathAssignment a;
    a.pair = r.pair;
    a.copy = r.copy;
    a.wavelength = r.wavelength;
    a.nodes = std::move(r.nodes);
    for (std::size_t i = 0; i + 1 < a.nodes.size(); ++i) {
      const auto it = index.find(make_link(a.nodes[i], a.nodes[i + 1]));
      a.links.push_back(it == index.end() ? -1 : it->second);
      if (it != index.end()) ++occupancy[it->second];
    }
    a.nsr = r.nsr;
    a.capacity_bps = r.capacity_bps;
    sol.total_capacity_bps += a.capacity_bps;
    ++per_pair[a.pair];
    sol.assignments.push_back(std::move(a));
  }
  // The table carries no separate N_lambda field: take the most common count.
  std::map<int, int> histogram;
  for (const auto& [pair, n] : per_pair) ++histogram[n];
  int best = 0;
  for (const auto& [n, freq] : histogram) {
    if (freq > best) {
      best = freq;
      sol.n_lambda = n;
    }
  }
  for (int o : occupancy) sol.max_link_occupancy = std::max(sol.max_link_occupancy, o);
  if (!sol.assignments.empty()) {
    sol.average_capacity_bps = sol.total_capacity_bps / static_cast<double>(sol.assignments.size());
  }
  return sol;
}

LogicalTopology topology_from_solution_tsv(const std::string& text) {
  std::set<Link> links;
  int max_node = -1;
  for (const auto& r : parse_solution_rows(text)) {
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      max_node = std::max(max_node, r.nodes[i]);
      if (i + 1 < r.nodes.size() && r.nodes[i] != r.nodes[i + 1]) links.insert(make_link(r.nodes[i], r.nodes[i + 1]));
    }
  }
  LogicalTopology t;
  t.name = "inferred";
  t.node_count = max_node + 1;
  t.links.assign(links.begin(), links.end());
  return t;
}

json solution_summary(const RwaSolution& sol) {
  return json{{"n_lambda", sol.n_lambda},
              {"lightpaths", sol.assignments.size()},
              {"total_tbps", sol.total_capacity_bps / 1e12},
              {"avg_gbps", sol.average_capacity_bps / 1e9},
              {"max_link_occupancy", sol.max_link_occupancy}};
}

std::string candidates_to_tsv(const std::vector<std::vector<CandidatePath>>& ranked, const std::vector<PathSet>& kept) {
  std::string out = "pair\trank\tnodes\tnsr\tcapacity_gbps\tkept\n";
  for (std::size_t d = 0; d < ranked.size(); ++d) {
    const auto& set = kept[d];
    for (std::size_t r = 0; r < ranked[d].size(); ++r) {
      const auto& p = ranked[d][r];
      const bool is_kept = std::any_of(set.paths.begin(), set.paths.end(),
                                       [&](const CandidatePath& q) { return q.nodes == p.nodes; });
      out += std::to_string(set.pair.a) + "-" + std::to_string(set.pair.b) + "\t" + std::to_string(r) + "\t" +
             join_nodes(p.nodes) + "\t" + format_number(p.nsr) + "\t" + format_number(p.capacity_bps / 1e9) + "\t" +
             (is_kept ? "1" : "0") + "\n";
    }
  }
  return out;
}

}  // namespace acmn
