#include "noma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "noma/rng.hpp"

namespace noma {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected integer, got '" + v + "'");
  }
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected real number, got '" + v + "'");
  }
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"n_users",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.n_users.clear();
         for (const auto& item : split_list(v))
           c.n_users.push_back(static_cast<int>(parse_int(k, item)));
       }},
      {"n_rf_chains",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.n_rf_chains.clear();
         for (const auto& item : split_list(v))
           c.n_rf_chains.push_back(static_cast<int>(parse_int(k, item)));
       }},
      {"gamma_th_db",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.gamma_th_db.clear();
         for (const auto& item : split_list(v)) c.gamma_th_db.push_back(parse_real(k, item));
       }},
      {"noise_power_w", [](ScenarioConfig& c, const std::string& k,
                           const std::string& v) { c.noise_power_w = parse_real(k, v); }},
      {"p_max_w", [](ScenarioConfig& c, const std::string& k,
                     const std::string& v) { c.p_max_w = parse_real(k, v); }},
      {"bandwidth_hz", [](ScenarioConfig& c, const std::string& k,
                          const std::string& v) { c.bandwidth_hz = parse_real(k, v); }},
      {"algorithm",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         try {
           c.algorithm = parse_algorithm(v);
         } catch (const std::exception&) {
           throw ConfigError("config key '" + k + "': unknown algorithm '" + v + "'");
         }
       }},
      {"trials", [](ScenarioConfig& c, const std::string& k,
                    const std::string& v) { c.trials = static_cast<int>(parse_int(k, v)); }},
      {"seed",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.seed = static_cast<std::uint64_t>(parse_int(k, v));
       }},
      {"n_scatter_clusters",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.n_scatter_clusters = static_cast<int>(parse_int(k, v));
       }},
      {"rays_per_cluster",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.rays_per_cluster = static_cast<int>(parse_int(k, v));
       }},
      {"angular_spread_deg", [](ScenarioConfig& c, const std::string& k,
                                const std::string& v) { c.angular_spread_deg = parse_real(k, v); }},
      {"element_spacing_wl", [](ScenarioConfig& c, const std::string& k,
                                const std::string& v) { c.element_spacing_wl = parse_real(k, v); }},
      {"carrier_normalization",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.carrier_normalization = parse_real(k, v);
       }},
      {"array_geometry",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "uniform-linear")
           c.array_geometry = ArrayGeometry::kUniformLinear;
         else if (v == "uniform-planar")
           c.array_geometry = ArrayGeometry::kUniformPlanar;
         else
           throw ConfigError("config key '" + k +
                             "': expected uniform-linear or uniform-planar, got '" + v + "'");
       }},
      {"antenna_gain_model",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "unit-gain")
           c.antenna_gain_model = AntennaGainModel::kUnitGain;
         else if (v == "sectorized")
           c.antenna_gain_model = AntennaGainModel::kSectorized;
         else
           throw ConfigError("config key '" + k + "': expected unit-gain or sectorized, got '" +
                             v + "'");
       }},
      {"n_hotspots", [](ScenarioConfig& c, const std::string& k,
                        const std::string& v) { c.n_hotspots = static_cast<int>(parse_int(k, v)); }},
      {"gwo_pop_size", [](ScenarioConfig& c, const std::string& k,
                          const std::string& v) { c.gwo_pop_size = static_cast<int>(parse_int(k, v)); }},
      {"gwo_max_iters", [](ScenarioConfig& c, const std::string& k,
                           const std::string& v) { c.gwo_max_iters = static_cast<int>(parse_int(k, v)); }},
      {"gwo_penalty", [](ScenarioConfig& c, const std::string& k,
                         const std::string& v) { c.gwo_penalty = parse_real(k, v); }},
      {"gwo_penalty_power", [](ScenarioConfig& c, const std::string& k,
                               const std::string& v) { c.gwo_penalty_power = parse_real(k, v); }},
      {"kuc_max_iters", [](ScenarioConfig& c, const std::string& k,
                           const std::string& v) { c.kuc_max_iters = static_cast<int>(parse_int(k, v)); }},
      {"pc_max_iters", [](ScenarioConfig& c, const std::string& k,
                          const std::string& v) { c.pc_max_iters = static_cast<int>(parse_int(k, v)); }},
      {"pc_tol_w", [](ScenarioConfig& c, const std::string& k,
                      const std::string& v) { c.pc_tol_w = parse_real(k, v); }},
  };
  return table;
}

void check_ascending(const std::vector<int>& v, const std::string& key) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1])
      throw ConfigError("config key '" + key + "': sweep list must be strictly increasing");
}

}  // namespace

void ScenarioConfig::validate() const {
  if (n_users.empty()) throw ConfigError("config key 'n_users': list must not be empty");
  if (n_rf_chains.empty()) throw ConfigError("config key 'n_rf_chains': list must not be empty");
  for (int n : n_users)
    if (n < 1) throw ConfigError("config key 'n_users': values must be >= 1");
  for (int m : n_rf_chains)
    if (m < 1) throw ConfigError("config key 'n_rf_chains': values must be >= 1");
  check_ascending(n_users, "n_users");
  check_ascending(n_rf_chains, "n_rf_chains");
  if (gamma_th_db.empty()) throw ConfigError("config key 'gamma_th_db': list must not be empty");
  if (!(noise_power_w > 0.0)) throw ConfigError("config key 'noise_power_w': must be > 0");
  if (!(p_max_w > 0.0)) throw ConfigError("config key 'p_max_w': must be > 0");
  if (!(bandwidth_hz > 0.0)) throw ConfigError("config key 'bandwidth_hz': must be > 0");
  if (trials < 1) throw ConfigError("config key 'trials': must be >= 1");
  if (n_scatter_clusters < 1) throw ConfigError("config key 'n_scatter_clusters': must be >= 1");
  if (rays_per_cluster < 1) throw ConfigError("config key 'rays_per_cluster': must be >= 1");
  if (!(angular_spread_deg > 0.0)) throw ConfigError("config key 'angular_spread_deg': must be > 0");
  if (!(element_spacing_wl > 0.0)) throw ConfigError("config key 'element_spacing_wl': must be > 0");
  if (!(carrier_normalization > 0.0))
    throw ConfigError("config key 'carrier_normalization': must be > 0");
  if (n_hotspots < 0) throw ConfigError("config key 'n_hotspots': must be >= 0");
  if (gwo_pop_size < 3) throw ConfigError("config key 'gwo_pop_size': must be >= 3");
  if (gwo_max_iters < 1) throw ConfigError("config key 'gwo_max_iters': must be >= 1");
  if (kuc_max_iters < 1) throw ConfigError("config key 'kuc_max_iters': must be >= 1");
  if (pc_max_iters < 1) throw ConfigError("config key 'pc_max_iters': must be >= 1");
  if (!(pc_tol_w > 0.0)) throw ConfigError("config key 'pc_tol_w': must be > 0");
  for (double g : gamma_th_db)
    if (!std::isfinite(g)) throw ConfigError("config key 'gamma_th_db': must be finite");
}

ChannelParams ScenarioConfig::channel_params(int rf_chains, std::uint64_t channel_seed) const {
  ChannelParams p;
  p.n_tx_antennas = rf_chains;
  p.n_scatter_clusters = n_scatter_clusters;
  p.rays_per_cluster = rays_per_cluster;
  p.angular_spread_rad = angular_spread_deg * std::numbers::pi / 180.0;
  p.carrier_normalization = carrier_normalization;
  p.gain_model = antenna_gain_model;
  p.geometry = array_geometry;
  p.element_spacing_wl = element_spacing_wl;
  p.n_hotspots = n_hotspots;
  p.seed = channel_seed;
  return p;
}

SystemConfig ScenarioConfig::system_config(int rf_chains) const {
  SystemConfig sys;
  sys.n_rf_chains = rf_chains;
  sys.gamma_th_linear.clear();
  for (double db : gamma_th_db) sys.gamma_th_linear.push_back(std::pow(10.0, db / 10.0));
  sys.noise_power_w = noise_power_w;
  sys.p_max_w = p_max_w;
  return sys;
}

AlgorithmOptions ScenarioConfig::algorithm_options(std::uint64_t trial_seed) const {
  AlgorithmOptions o;
  o.seed = trial_seed;
  o.kuc.max_iters = kuc_max_iters;
  o.gwo.pop_size = gwo_pop_size;
  o.gwo.max_iters = gwo_max_iters;
  o.gwo.penalty = gwo_penalty;
  o.gwo.penalty_power = gwo_penalty_power;
  return o;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ScenarioConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(cfg, key, value);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, fn] : setters()) k.push_back(key);
    return k;
  }();
  return keys;
}

}  // namespace noma
