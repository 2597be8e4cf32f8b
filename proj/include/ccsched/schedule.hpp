#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccsched/profiles.hpp"

namespace ccsched {

enum class Phase { Virtual, Coded, Unicast };

// One data stream inside a transmission vector: subpacket `subpacket` of
// packet `packet` of the file requested by `recipient`, beamformed to be
// suppressed at every user in `nulling`.
struct Term {
  user_id recipient = 0;
  int packet = 0;
  int subpacket = 0;  // q
  std::vector<user_id> nulling;
};

// Canonical member order inside nulling sets and dumps: real users ascending,
// then phantoms ascending.
inline bool user_order(user_id a, user_id b) {
  const bool pa = is_phantom(a), pb = is_phantom(b);
  if (pa != pb) return pb;
  return pa ? -a < -b : a < b;
}

inline void canonicalize(std::vector<user_id>& users) {
  std::sort(users.begin(), users.end(), user_order);
  users.erase(std::unique(users.begin(), users.end()), users.end());
}

struct Transmission {
  Phase phase = Phase::Virtual;
  int round = 0;  // r; slot counter for unicast
  int index = 0;  // j
  int shift = 0;  // s, nonzero only for b != 0 elevations
  std::vector<Term> terms;

  int real_dof() const {
    int n = 0;
    for (const auto& t : terms) n += is_phantom(t.recipient) ? 0 : 1;
    return n;
  }
};

// Subpackets still owed per user, each an outstanding (packet, q) pair kept
// sorted so replanning is deterministic.
struct ResidualLedger {
  std::map<user_id, std::vector<std::pair<int, int>>> outstanding;

  void add(user_id user, int packet, int subpacket) {
    auto& list = outstanding[user];
    list.emplace_back(packet, subpacket);
    std::sort(list.begin(), list.end());
  }

  int demand_of(user_id user) const {  // u(k)
    const auto it = outstanding.find(user);
    return it == outstanding.end() ? 0 : static_cast<int>(it->second.size());
  }

  int total() const {
    int n = 0;
    for (const auto& [user, list] : outstanding) n += static_cast<int>(list.size());
    return n;
  }

  bool empty() const { return total() == 0; }
};

// Ordered CC-phase and unicast-phase transmissions plus the residual-demand
// ledger the unicast plan was built from.
struct DeliverySchedule {
  std::vector<Transmission> cc;
  std::vector<Transmission> unicast;
  ResidualLedger residual;
};

inline std::string format_user(user_id u) {
  return is_phantom(u) ? "~" + std::to_string(-u) : std::to_string(u);
}

// One transmission per line:
//   V <r> <j> | (user,packet,q,{n1,n2}) ...
//   C <r> <j> [<s>] | ...
//   U <slot> | ...
inline std::string to_line(const Transmission& tx) {
  std::string out;
  switch (tx.phase) {
    case Phase::Virtual:
      out = "V " + std::to_string(tx.round) + " " + std::to_string(tx.index);
      break;
    case Phase::Coded:
      out = "C " + std::to_string(tx.round) + " " + std::to_string(tx.index);
      if (tx.shift > 0) out += " " + std::to_string(tx.shift);
      break;
    case Phase::Unicast:
      out = "U " + std::to_string(tx.round);
      break;
  }
  out += " |";
  for (const auto& t : tx.terms) {
    out += " (" + format_user(t.recipient) + "," + std::to_string(t.packet) + "," +
           std::to_string(t.subpacket) + ",{";
    for (std::size_t i = 0; i < t.nulling.size(); ++i) {
      if (i) out += ",";
      out += format_user(t.nulling[i]);
    }
    out += "})";
  }
  return out;
}

inline std::string dump_schedule(const std::vector<Transmission>& txs) {
  std::string out;
  for (const auto& tx : txs) {
    out += to_line(tx);
    out.push_back('\n');
  }
  return out;
}

inline std::string dump_schedule(const DeliverySchedule& sched) {
  std::string out = dump_schedule(sched.cc);
  out += dump_schedule(sched.unicast);
  return out;
}

}  // namespace ccsched
