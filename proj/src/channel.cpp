#include "noma/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "noma/rng.hpp"

namespace noma {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
  // wrap to (-pi, pi]
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

// Largest divisor of n not exceeding sqrt(n); planar grids degrade to a
// line when n is prime.
int planar_rows(int n) {
  int best = 1;
  for (int r = 1; r * r <= n; ++r)
    if (n % r == 0) best = r;
  return best;
}

}  // namespace

void ChannelParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("ChannelParams: " + msg); };
  if (n_tx_antennas < 1) fail("n_tx_antennas must be >= 1");
  if (n_scatter_clusters < 1) fail("n_scatter_clusters must be >= 1");
  if (rays_per_cluster < 1) fail("rays_per_cluster must be >= 1");
  if (!(angular_spread_rad > 0.0)) fail("angular_spread_rad must be > 0");
  if (!(carrier_normalization > 0.0)) fail("carrier_normalization must be > 0");
  if (!(element_spacing_wl > 0.0)) fail("element_spacing_wl must be > 0");
  if (n_hotspots < 0) fail("n_hotspots must be >= 0");
}

Eigen::VectorXcd array_response(ArrayGeometry geometry, double azimuth,
                                double elevation, int n_elements,
                                double element_spacing_wl) {
  if (n_elements < 1) throw std::invalid_argument("array_response: n_elements must be >= 1");
  if (!(element_spacing_wl > 0.0))
    throw std::invalid_argument("array_response: element spacing must be > 0");

  const double u_az = wrap_pi(azimuth) / kPi * std::cos(elevation);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_elements));
  Eigen::VectorXcd a(n_elements);

  if (geometry == ArrayGeometry::kUniformLinear) {
    for (int m = 0; m < n_elements; ++m) {
      double phase = 2.0 * kPi * element_spacing_wl * m * u_az;
      a(m) = scale * std::polar(1.0, phase);
    }
    return a;
  }

  const double u_el = wrap_pi(elevation) / kPi;
  const int rows = planar_rows(n_elements);
  const int cols = n_elements / rows;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double phase = 2.0 * kPi * element_spacing_wl * (c * u_az + r * u_el);
      a(r * cols + c) = scale * std::polar(1.0, phase);
    }
  }
  return a;
}

double antenna_gain(AntennaGainModel model, double azimuth, double /*elevation*/) {
  if (model == AntennaGainModel::kUnitGain) return 1.0;
  // 3-sector style pattern: -min(12*(az/az3dB)^2, 20) dB, az3dB = 70 deg.
  const double az3db = 70.0 * kPi / 180.0;
  double az = wrap_pi(azimuth);
  double att_db = std::min(12.0 * (az / az3db) * (az / az3db), 20.0);
  return std::pow(10.0, -att_db / 20.0);
}

ChannelSet generate_channels(const ChannelParams& params, int n_users) {
  params.validate();
  if (n_users < 1) throw std::invalid_argument("generate_channels: n_users must be >= 1");

  const int m = params.n_tx_antennas;
  const int n_cl = params.n_scatter_clusters;
  const int n_ray = params.rays_per_cluster;
  // Default pool: two hotspots per antenna keeps the direction diversity
  // growing with the array, so k-means never outnumbers distinct clusters.
  const int n_hot = params.n_hotspots > 0 ? params.n_hotspots : 2 * m;

  std::mt19937_64 rng(params.seed);
  // Full-circle azimuth with omnidirectional elements: the ULA mirror
  // degeneracy (az vs pi - az) then yields perfectly collinear scatter
  // centers across hotspots, a deliberate source of stackable users.
  std::uniform_real_distribution<double> uni_az(-kPi, kPi);
  std::uniform_real_distribution<double> uni_el(-kPi / 4.0, kPi / 4.0);
  std::uniform_int_distribution<int> pick_hotspot(0, n_hot - 1);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));  // CN(0,1) parts

  // Hotspot-owned scatter cluster centers, shared by all attached users.
  std::vector<std::vector<std::pair<double, double>>> centers(n_hot);
  for (int hs = 0; hs < n_hot; ++hs) {
    centers[hs].resize(n_cl);
    for (int c = 0; c < n_cl; ++c) centers[hs][c] = {uni_az(rng), uni_el(rng)};
  }

  // E[|h|^2] = n_tx for unit carrier_normalization: each of the n_cl*n_ray
  // terms is a unit-variance gain times a unit-norm response.
  const double gamma = params.carrier_normalization *
                       std::sqrt(static_cast<double>(m) / (static_cast<double>(n_cl) * n_ray));

  ChannelSet out;
  out.params = params;
  out.n_users = n_users;
  out.h.resize(n_users);
  out.hotspot.resize(n_users);

  for (int u = 0; u < n_users; ++u) {
    const int hs = pick_hotspot(rng);
    out.hotspot[u] = hs;
    Eigen::VectorXcd h = Eigen::VectorXcd::Zero(m);
    for (int c = 0; c < n_cl; ++c) {
      const auto [az0, el0] = centers[hs][c];
      for (int r = 0; r < n_ray; ++r) {
        double az = az0 + sample_laplace(rng, params.angular_spread_rad);
        double el = el0 + sample_laplace(rng, params.angular_spread_rad);
        std::complex<double> alpha(gauss(rng), gauss(rng));
        double g = antenna_gain(params.gain_model, az, el);
        h += alpha * g * array_response(params.geometry, az, el, m, params.element_spacing_wl);
      }
    }
    h *= gamma;
    if (!h.allFinite() || h.norm() == 0.0)
      throw std::runtime_error("generate_channels: non-finite or zero channel");
    out.h[u] = std::move(h);
  }
  return out;
}

}  // namespace noma
