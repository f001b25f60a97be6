#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "noma/channel.hpp"
#include "noma/clustering.hpp"

namespace noma {

// Raised for any malformed or out-of-range configuration input; the message
// names the offending key.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// One flat key = value scenario description. n_users and n_rf_chains accept
// comma-separated sweep lists; gamma_th_db accepts a list of per-user
// targets (cycled over users).
struct ScenarioConfig {
  std::vector<int> n_users = {150};
  std::vector<int> n_rf_chains = {5};
  std::vector<double> gamma_th_db = {10.0};
  double noise_power_w = 1e-2;
  double p_max_w = 1.0;
  double bandwidth_hz = 200e3;
  Algorithm algorithm = Algorithm::kCia;
  int trials = 50;
  std::uint64_t seed = 42;

  // channel hyperparameters
  int n_scatter_clusters = 1;
  int rays_per_cluster = 10;
  double angular_spread_deg = 0.002;
  double element_spacing_wl = 0.5;
  double carrier_normalization = 60.0;
  ArrayGeometry array_geometry = ArrayGeometry::kUniformLinear;
  AntennaGainModel antenna_gain_model = AntennaGainModel::kUnitGain;
  int n_hotspots = 0;  // 0 = two per RF chain

  // algorithm knobs
  int gwo_pop_size = 30;
  int gwo_max_iters = 150;
  double gwo_penalty = 1.0;
  double gwo_penalty_power = 10.0;
  int kuc_max_iters = 100;
  int pc_max_iters = 50;
  double pc_tol_w = 1e-6;

  void validate() const;  // throws ConfigError
  ChannelParams channel_params(int rf_chains, std::uint64_t channel_seed) const;
  SystemConfig system_config(int rf_chains) const;
  AlgorithmOptions algorithm_options(std::uint64_t trial_seed) const;
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys raise
// ConfigError naming the key.
ScenarioConfig parse_config_file(const std::string& path);

// Applies one override; key names match the config file keys.
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Every valid key, for CLI registration and error messages.
const std::vector<std::string>& config_keys();

}  // namespace noma
