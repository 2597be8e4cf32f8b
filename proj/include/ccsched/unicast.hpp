#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "ccsched/placement.hpp"
#include "ccsched/schedule.hpp"

namespace ccsched {

// Full residual demand of a user that took no part in the CC phase: every
// uncached packet at the CC phase's subpacket granularity, ordered by
// (packet, q).
inline std::vector<std::pair<int, int>> excluded_user_demand(int profile, int p, int tbar,
                                                             int per_packet_count) {
  std::vector<std::pair<int, int>> demand;
  demand.reserve(static_cast<std::size_t>(p - tbar) * per_packet_count);
  for (int packet = 1; packet <= p; ++packet) {
    if (profile_caches(profile, packet, p, tbar)) continue;
    for (int q = 1; q <= per_packet_count; ++q) demand.emplace_back(packet, q);
  }
  return demand;
}

// Greedy residual delivery: keep serving the min(alpha, U) most-loaded users
// one subpacket each until the ledger drains. Ties break toward the lower
// user id so replays are deterministic.
inline std::vector<Transmission> plan_unicast(ResidualLedger ledger, int alpha) {
  std::vector<Transmission> plan;
  int slot = 0;
  while (true) {
    std::vector<user_id> active;
    for (const auto& [user, list] : ledger.outstanding)
      if (!list.empty()) active.push_back(user);
    if (active.empty()) break;

    std::stable_sort(active.begin(), active.end(), [&](user_id a, user_id b) {
      const auto ua = ledger.outstanding[a].size();
      const auto ub = ledger.outstanding[b].size();
      if (ua != ub) return ua > ub;
      return a < b;
    });
    const int served = std::min<int>(alpha, static_cast<int>(active.size()));
    active.resize(served);

    Transmission tx;
    tx.phase = Phase::Unicast;
    tx.round = ++slot;
    for (user_id user : active) {
      auto& list = ledger.outstanding[user];
      Term term;
      term.recipient = user;
      term.packet = list.front().first;
      term.subpacket = list.front().second;
      list.erase(list.begin());
      for (user_id other : active)
        if (other != user) term.nulling.push_back(other);
      canonicalize(term.nulling);
      tx.terms.push_back(std::move(term));
    }
    plan.push_back(std::move(tx));
  }
  return plan;
}

}  // namespace ccsched
