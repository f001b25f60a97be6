#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace noma {

// splitmix64 step; used both as a standalone mixer and to derive
// independent engine seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic seed for (master, sweep point, trial). Stable across runs;
// the raw CSV logs this value so any row can be regenerated.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t sweep_index,
                                std::uint64_t trial_index) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ (0x9e3779b97f4a7c15ULL * (sweep_index + 1));
  h = splitmix64(s);
  s = h ^ (0xc2b2ae3d27d4eb4fULL * (trial_index + 1));
  return splitmix64(s);
}

// Seed for an algorithm's private RNG, decoupled from the channel draw so
// every algorithm sees the same channels within a trial.
inline std::uint64_t salted_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t s = seed ^ (salt * 0xff51afd7ed558ccdULL);
  return splitmix64(s);
}

// Zero-mean Laplace sample with scale b (standard deviation sqrt(2)*b).
inline double sample_laplace(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  double u = uni(rng);
  double s = u < 0.0 ? -1.0 : 1.0;
  return -scale * s * std::log(1.0 - 2.0 * std::abs(u));
}

}  // namespace noma
