#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ccsched/errors.hpp"
#include "ccsched/placement.hpp"
#include "ccsched/schedule.hpp"

namespace ccsched {

// Parameters of the P-user virtual network a delivery interval reduces to.
struct VirtualConfig {
  int profile_count = 0;  // P
  int caching_gain = 0;   // tbar
  int spatial_dof = 0;    // alpha, real network
  int eta_hat = 0;        // common padded profile length
  int virtual_dof = 0;    // alpha_bar = ceil(alpha / eta_hat)
  int remainder = 0;      // b = alpha mod eta_hat
};

inline VirtualConfig make_virtual_config(int alpha, int eta_hat, int profile_count,
                                         int caching_gain) {
  if (alpha < 1) throw ConfigError("spatial DoF must be positive");
  if (eta_hat < 1) throw ConfigError("eta_hat must be positive");
  VirtualConfig cfg;
  cfg.profile_count = profile_count;
  cfg.caching_gain = caching_gain;
  cfg.spatial_dof = alpha;
  cfg.eta_hat = eta_hat;
  cfg.virtual_dof = (alpha + eta_hat - 1) / eta_hat;
  cfg.remainder = alpha - eta_hat * (alpha / eta_hat);
  if (cfg.virtual_dof < caching_gain)
    throw UnsupportedRegimeError("virtual DoF " + std::to_string(cfg.virtual_dof) +
                                 " below caching gain " + std::to_string(caching_gain) +
                                 "; choose a smaller eta_hat");
  return cfg;
}

// served \ ({intended} + every served user caching the packet).
inline std::vector<user_id> interference_set(const std::vector<user_id>& served,
                                             user_id intended, int packet,
                                             const PlacementMatrix& placement) {
  bool found = false;
  for (user_id u : served) found = found || u == intended;
  if (!found) throw ContractViolation("intended user not served");
  if (profile_caches(static_cast<int>(intended), packet, placement.dimension, placement.window))
    throw ContractViolation("intended user already caches the packet");
  std::vector<user_id> out;
  for (user_id u : served) {
    if (u == intended) continue;
    if (profile_caches(static_cast<int>(u), packet, placement.dimension, placement.window))
      continue;
    out.push_back(u);
  }
  return out;
}

// Cyclic codeword grid for the virtual network. In round r the block
// B_r = {r..r+tbar-1} holds the users whose shared packet (packet r, the one
// the whole block caches) is multicast to a sliding window of alpha_bar users
// taken from the remaining list L_r = (r+tbar, ..., r+P-1); the window slides
// with j and wraps inside L_r. Block users simultaneously receive their own
// missing packets, advancing cyclically with j so that over a round each
// block user sweeps its uncached packets exactly once. Subpacket counters are
// scoped per (packet, user) pair and grow in generation order.
inline std::vector<Transmission> generate_virtual_schedule(const VirtualConfig& cfg) {
  const int p = cfg.profile_count;
  const int tbar = cfg.caching_gain;
  const int abar = cfg.virtual_dof;
  if (tbar < 1 || tbar >= p) throw ConfigError("caching gain must satisfy 1 <= tbar < P");
  if (abar > p - tbar)
    throw ConfigError("a " + std::to_string(p) + "-user virtual network cannot serve " +
                      std::to_string(tbar + abar) + " users per transmission");
  const PlacementMatrix placement = build_placement_matrix(p, tbar);
  const int tail = p - tbar;  // |L_r|

  std::vector<Transmission> schedule;
  schedule.reserve(static_cast<std::size_t>(p) * tail);
  std::map<std::pair<int, user_id>, int> counters;

  for (int r = 1; r <= p; ++r) {
    std::vector<user_id> rest(tail);  // L_r
    for (int m = 1; m <= tail; ++m) rest[m - 1] = static_cast<user_id>(wrap_index(r + tbar - 1 + m, p));

    for (int j = 1; j <= tail; ++j) {
      Transmission tx;
      tx.phase = Phase::Virtual;
      tx.round = r;
      tx.index = j;

      std::vector<std::pair<user_id, int>> pairs;  // (user, packet), term order
      for (int i = 1; i <= tbar; ++i) {
        const int user = wrap_index(r + i - 1, p);
        const int pos = (j - 1 + (tbar - i)) % tail + 1;
        pairs.emplace_back(static_cast<user_id>(user), wrap_index(user + pos, p));
      }
      for (int m = 0; m < abar; ++m)
        pairs.emplace_back(rest[(j - 1 + m) % tail], r);

      std::vector<user_id> served;
      served.reserve(pairs.size());
      for (const auto& [user, packet] : pairs) served.push_back(user);

      for (const auto& [user, packet] : pairs) {
        Term term;
        term.recipient = user;
        term.packet = packet;
        term.subpacket = ++counters[{packet, user}];
        term.nulling = interference_set(served, user, packet, placement);
        canonicalize(term.nulling);
        if (static_cast<int>(term.nulling.size()) != abar - 1)
          throw ContractViolation("virtual interference set has " +
                                  std::to_string(term.nulling.size()) + " members, expected " +
                                  std::to_string(abar - 1));
        tx.terms.push_back(std::move(term));
      }
      schedule.push_back(std::move(tx));
    }
  }
  return schedule;
}

}  // namespace ccsched
