#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "ccsched/errors.hpp"

namespace ccsched {

// Rayleigh block-fading channel draw: rows are users, columns antennas,
// entries i.i.d. CN(0, 1). Identical seeds give identical matrices.
inline Eigen::MatrixXcd sample_channel(int num_users, int num_tx_antennas, std::uint64_t seed) {
  if (num_users < 1 || num_tx_antennas < 1)
    throw ArgumentError("channel dimensions must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd h(num_users, num_tx_antennas);
  for (int u = 0; u < num_users; ++u)
    for (int a = 0; a < num_tx_antennas; ++a) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      h(u, a) = std::complex<double>(re, im);
    }
  return h;
}

struct ChannelRealization {
  Eigen::MatrixXcd h;      // K x N_tx
  double noise_power = 1.0;  // N0
  double tx_power = 1.0;     // P_tx; SNR = tx_power / noise_power
};

// Stable per-(trial, transmission) seed stream derived from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(mix(master ^ mix(trial + 1)) ^ mix(index + 0x51ull));
}

}  // namespace ccsched
