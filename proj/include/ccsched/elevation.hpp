#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ccsched/errors.hpp"
#include "ccsched/profiles.hpp"
#include "ccsched/schedule.hpp"
#include "ccsched/virtual_schedule.hpp"

namespace ccsched {

enum class ExclusionPolicy { HighestIndex, SeededRandom };

// Profile membership after trimming to the common length eta_hat. Oversized
// profiles lose members to the exclusion list; undersized ones are padded
// with phantoms, numbered globally in profile order.
struct ProfileRoster {
  int profile_count = 0;
  int eta_hat = 0;
  std::vector<std::vector<user_id>> members;  // per profile, exactly eta_hat entries
  std::vector<user_id> excluded;              // real users dropped from the CC phase
  std::vector<int> raw_lengths;               // eta_p before padding

  const std::vector<user_id>& of(int profile) const { return members[profile - 1]; }

  std::map<user_id, int> profile_map() const {
    std::map<user_id, int> m;
    for (int p = 1; p <= profile_count; ++p)
      for (user_id u : members[p - 1]) m[u] = p;
    return m;
  }
};

inline ProfileRoster pad_profiles(const std::vector<std::vector<user_id>>& raw, int eta_hat,
                                  ExclusionPolicy policy = ExclusionPolicy::HighestIndex,
                                  std::uint64_t seed = 0) {
  if (eta_hat < 1) throw ConfigError("eta_hat must be positive");
  ProfileRoster roster;
  roster.profile_count = static_cast<int>(raw.size());
  roster.eta_hat = eta_hat;
  roster.members.resize(raw.size());
  std::mt19937_64 rng(seed);
  int next_phantom = 1;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::vector<user_id> list = raw[i];
    roster.raw_lengths.push_back(static_cast<int>(list.size()));
    while (static_cast<int>(list.size()) > eta_hat) {
      std::size_t drop = list.size() - 1;
      if (policy == ExclusionPolicy::SeededRandom)
        drop = std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng);
      roster.excluded.push_back(list[drop]);
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    while (static_cast<int>(list.size()) < eta_hat) list.push_back(phantom_id(next_phantom++));
    roster.members[i] = std::move(list);
  }
  std::sort(roster.excluded.begin(), roster.excluded.end());
  return roster;
}

// E_s^b(eta_hat): the first b elements of [eta_hat] after a circular left
// shift by s; empty when b = 0.
inline std::vector<int> shift_window(int s, int b, int eta_hat) {
  if (s < 1 || s > eta_hat) throw ArgumentError("shift s must lie in [1, eta_hat]");
  if (b < 0 || b >= eta_hat) throw ArgumentError("remainder b must lie in [0, eta_hat)");
  std::vector<int> out;
  out.reserve(b);
  for (int e = 1; e <= b; ++e) out.push_back((e + s - 2) % eta_hat + 1);
  return out;
}

// Subpacket indices are scoped per (packet, recipient) and must advance in
// emission order across the whole elevated schedule.
class SubpacketCounter {
 public:
  int next(int packet, user_id recipient) { return ++counts_[{packet, recipient}]; }

 private:
  std::map<std::pair<int, user_id>, int> counts_;
};

namespace detail {

inline Term make_real_term(user_id recipient, int packet, std::vector<user_id> nulling,
                           SubpacketCounter& counter) {
  Term t;
  t.recipient = recipient;
  t.packet = packet;
  t.subpacket = counter.next(packet, recipient);
  nulling.erase(std::remove(nulling.begin(), nulling.end(), recipient), nulling.end());
  canonicalize(nulling);
  t.nulling = std::move(nulling);
  return t;
}

}  // namespace detail

// b = 0: one real vector per virtual vector. Every virtual term fans out to
// the whole roster of its profile; the nulling set unions the rosters of the
// interference profiles with the recipient's co-profile members.
inline Transmission elevate_b0(const Transmission& vt, const ProfileRoster& roster,
                               SubpacketCounter& counter) {
  Transmission out;
  out.phase = Phase::Coded;
  out.round = vt.round;
  out.index = vt.index;
  for (const auto& term : vt.terms) {
    const auto& fanout = roster.of(static_cast<int>(term.recipient));
    for (user_id recipient : fanout) {
      std::vector<user_id> nulling;
      for (user_id profile : term.nulling) {
        const auto& d = roster.of(static_cast<int>(profile));
        nulling.insert(nulling.end(), d.begin(), d.end());
      }
      nulling.insert(nulling.end(), fanout.begin(), fanout.end());
      out.terms.push_back(detail::make_real_term(recipient, term.packet, std::move(nulling),
                                                 counter));
    }
  }
  return out;
}

// b != 0: the s-th of eta_hat real vectors derived from one virtual vector.
// The first tbar+abar-1 virtual terms fan out fully; the last one only to the
// b members selected by E_s^b. The base nulling set takes full rosters of the
// interference profiles except the last served profile, which contributes its
// E_s^b-selected members only.
inline Transmission elevate_bnz(const Transmission& vt, const ProfileRoster& roster, int s,
                                int b, SubpacketCounter& counter) {
  Transmission out;
  out.phase = Phase::Coded;
  out.round = vt.round;
  out.index = vt.index;
  out.shift = s;

  const std::vector<int> window = shift_window(s, b, roster.eta_hat);
  const int last_profile = static_cast<int>(vt.terms.back().recipient);
  std::vector<user_id> selected_last;
  for (int i : window) selected_last.push_back(roster.of(last_profile)[i - 1]);

  for (std::size_t n = 0; n < vt.terms.size(); ++n) {
    const auto& term = vt.terms[n];
    const bool last = n + 1 == vt.terms.size();

    std::vector<user_id> base = selected_last;
    for (user_id profile : term.nulling) {
      if (static_cast<int>(profile) == last_profile) continue;  // E-selected members already in
      const auto& d = roster.of(static_cast<int>(profile));
      base.insert(base.end(), d.begin(), d.end());
    }

    if (!last) {
      const auto& fanout = roster.of(static_cast<int>(term.recipient));
      for (user_id recipient : fanout) {
        std::vector<user_id> nulling = base;
        nulling.insert(nulling.end(), fanout.begin(), fanout.end());
        out.terms.push_back(detail::make_real_term(recipient, term.packet, std::move(nulling),
                                                   counter));
      }
    } else {
      for (user_id recipient : selected_last)
        out.terms.push_back(detail::make_real_term(recipient, term.packet, base, counter));
    }
  }
  return out;
}

// Drop phantom recipients and scrub phantom ids from nulling sets.
inline Transmission strip_phantoms(const Transmission& tx) {
  Transmission out;
  out.phase = tx.phase;
  out.round = tx.round;
  out.index = tx.index;
  out.shift = tx.shift;
  for (const auto& term : tx.terms) {
    if (is_phantom(term.recipient)) continue;
    Term kept = term;
    kept.nulling.erase(
        std::remove_if(kept.nulling.begin(), kept.nulling.end(), is_phantom),
        kept.nulling.end());
    out.terms.push_back(std::move(kept));
  }
  return out;
}

struct DofFilterResult {
  std::vector<Transmission> kept;
  std::vector<Term> deferred;
};

// Using coded caching must never cost DoF: transmissions whose stripped DoF
// fell below alpha are pulled from the CC phase and their terms handed to the
// unicast planner.
inline DofFilterResult dof_filter(std::vector<Transmission> stripped, int alpha) {
  DofFilterResult result;
  for (auto& tx : stripped) {
    if (tx.real_dof() < alpha) {
      for (auto& term : tx.terms) result.deferred.push_back(std::move(term));
    } else {
      result.kept.push_back(std::move(tx));
    }
  }
  return result;
}

// Subpackets per packet; multiply by P for the per-file total.
inline int cc_subpacketization(int tbar, int alpha_bar, int eta_hat, int b, int alpha) {
  return b == 0 ? tbar + alpha_bar : eta_hat * tbar + alpha;
}

inline int cc_subpacketization(const VirtualConfig& cfg) {
  return cc_subpacketization(cfg.caching_gain, cfg.virtual_dof, cfg.eta_hat, cfg.remainder,
                             cfg.spatial_dof);
}

// Full elevated schedule in emission order (r, then j, then s).
inline std::vector<Transmission> elevate_schedule(const std::vector<Transmission>& virtual_schedule,
                                                  const ProfileRoster& roster,
                                                  const VirtualConfig& cfg) {
  std::vector<Transmission> out;
  SubpacketCounter counter;
  if (cfg.remainder == 0) {
    out.reserve(virtual_schedule.size());
    for (const auto& vt : virtual_schedule) out.push_back(elevate_b0(vt, roster, counter));
  } else {
    out.reserve(virtual_schedule.size() * static_cast<std::size_t>(cfg.eta_hat));
    for (const auto& vt : virtual_schedule)
      for (int s = 1; s <= cfg.eta_hat; ++s)
        out.push_back(elevate_bnz(vt, roster, s, cfg.remainder, counter));
  }
  return out;
}

}  // namespace ccsched
