#pragma once

#include <cstdint>

#include "ccsched/errors.hpp"
#include "ccsched/rational.hpp"

namespace ccsched {

// Global parameters of one delivery interval. caching_gain = P * gamma,
// where profile_count P is the smallest integer making that product integral.
struct NetworkConfig {
  int num_users = 0;        // K
  int library_size = 0;     // N
  double file_size = 1.0;   // f, normalized nats
  Rational cache_ratio;     // gamma
  int spatial_dof = 0;      // alpha
  int num_tx_antennas = 0;  // >= alpha
  int profile_count = 0;    // P
  int caching_gain = 0;     // tbar
};

// Smallest P with P*gamma integral, paired with tbar = P*gamma.
// In lowest terms gamma = tbar/P directly.
inline std::pair<int, int> derive_p_and_t(const Rational& gamma) {
  if (gamma.num <= 0 || gamma.num >= gamma.den)
    throw ConfigError("cache ratio must lie strictly between 0 and 1");
  return {static_cast<int>(gamma.den), static_cast<int>(gamma.num)};
}

inline NetworkConfig make_network_config(int num_users, int library_size, double file_size,
                                         const Rational& gamma, int spatial_dof,
                                         int num_tx_antennas) {
  NetworkConfig cfg;
  cfg.num_users = num_users;
  cfg.library_size = library_size;
  cfg.file_size = file_size;
  cfg.cache_ratio = gamma;
  cfg.spatial_dof = spatial_dof;
  cfg.num_tx_antennas = num_tx_antennas;
  const auto [p, t] = derive_p_and_t(gamma);
  cfg.profile_count = p;
  cfg.caching_gain = t;
  if (num_users < 1) throw ConfigError("need at least one user");
  if (library_size < 1) throw ConfigError("library must be nonempty");
  if (file_size <= 0.0) throw ConfigError("file size must be positive");
  if (spatial_dof < 1) throw ConfigError("spatial DoF must be positive");
  if (num_tx_antennas < spatial_dof)
    throw ConfigError("transmit antennas must be at least the spatial DoF");
  return cfg;
}

}  // namespace ccsched
