#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace noma {

enum class ArrayGeometry { kUniformLinear, kUniformPlanar };
enum class AntennaGainModel { kUnitGain, kSectorized };

// Clustered multipath channel parameters. Each hotspot owns a fixed set of
// scatter-cluster center angles; every user attached to the hotspot re-draws
// per-ray Laplacian angle offsets and complex gains around those centers, so
// users sharing a hotspot are spatially correlated while users in different
// hotspots are nearly uncorrelated.
struct ChannelParams {
  int n_tx_antennas = 8;
  int n_scatter_clusters = 4;
  int rays_per_cluster = 10;
  double angular_spread_rad = 0.17453292519943295;  // 10 degrees
  // Amplitude multiplier on top of the internal normalization; with 1.0 the
  // expected squared channel norm is n_tx_antennas.
  double carrier_normalization = 1.0;
  AntennaGainModel gain_model = AntennaGainModel::kUnitGain;
  ArrayGeometry geometry = ArrayGeometry::kUniformLinear;
  double element_spacing_wl = 0.5;  // element spacing in wavelengths
  int n_hotspots = 0;               // 0 = two hotspots per transmit antenna
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

struct ChannelSet {
  ChannelParams params;
  int n_users = 0;
  std::vector<Eigen::VectorXcd> h;  // one length-n_tx_antennas vector per user
  std::vector<int> hotspot;         // hotspot index per user
};

// Unit-norm array response. Angles are mapped to normalized directions
// u = wrap(azimuth)/pi * cos(elevation) (and wrap(elevation)/pi on the
// planar array's second axis) so the response is a pure phase ramp
// exp(j*2*pi*spacing*m*u)/sqrt(n); cross-correlation between two responses
// follows the Dirichlet kernel in the direction difference and the two
// endfire directions stay resolvable.
Eigen::VectorXcd array_response(ArrayGeometry geometry, double azimuth,
                                double elevation, int n_elements,
                                double element_spacing_wl);

// Sector antenna amplitude gain (unit gain at boresight, parabolic rolloff
// in dB capped at 20 dB); kUnitGain returns 1 for all angles.
double antenna_gain(AntennaGainModel model, double azimuth, double elevation);

// Draws the full channel set. Deterministic for identical (params, n_users).
ChannelSet generate_channels(const ChannelParams& params, int n_users);

}  // namespace noma
