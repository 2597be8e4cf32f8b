#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ccsched/errors.hpp"

namespace ccsched {

// Real users are positive ids; phantom n is the negative id -n.
using user_id = std::int32_t;

inline bool is_phantom(user_id u) { return u < 0; }
inline user_id phantom_id(int n) { return static_cast<user_id>(-n); }

enum class AssignPolicy { RoundRobin, SeededUniform, ExplicitList };

// p(k) for every requesting user k in [1, K].
struct ProfileAssignment {
  int profile_count = 0;
  std::vector<int> profile_of_user;  // index k-1

  int profile_of(user_id k) const { return profile_of_user[static_cast<std::size_t>(k - 1)]; }

  std::vector<int> lengths() const {  // eta_p
    std::vector<int> eta(profile_count, 0);
    for (int p : profile_of_user) ++eta[p - 1];
    return eta;
  }

  // Members per profile, ascending user id.
  std::vector<std::vector<user_id>> rosters() const {
    std::vector<std::vector<user_id>> d(profile_count);
    for (std::size_t i = 0; i < profile_of_user.size(); ++i)
      d[profile_of_user[i] - 1].push_back(static_cast<user_id>(i + 1));
    return d;
  }
};

inline ProfileAssignment assign_profiles_round_robin(int num_users, int profile_count) {
  ProfileAssignment a;
  a.profile_count = profile_count;
  a.profile_of_user.resize(num_users);
  for (int k = 1; k <= num_users; ++k) a.profile_of_user[k - 1] = (k - 1) % profile_count + 1;
  return a;
}

inline ProfileAssignment assign_profiles_seeded(int num_users, int profile_count,
                                                std::uint64_t seed) {
  ProfileAssignment a;
  a.profile_count = profile_count;
  a.profile_of_user.resize(num_users);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, profile_count);
  for (int k = 1; k <= num_users; ++k) a.profile_of_user[k - 1] = pick(rng);
  return a;
}

// Users 1..K fill profiles in order: profile 1 takes the first eta[0] ids, and so on.
inline ProfileAssignment assign_profiles_explicit(const std::vector<int>& eta, int num_users) {
  const int total = std::accumulate(eta.begin(), eta.end(), 0);
  if (total != num_users)
    throw ConfigError("explicit profile lengths sum to " + std::to_string(total) +
                      ", expected " + std::to_string(num_users));
  ProfileAssignment a;
  a.profile_count = static_cast<int>(eta.size());
  a.profile_of_user.reserve(num_users);
  for (int p = 1; p <= a.profile_count; ++p)
    for (int i = 0; i < eta[p - 1]; ++i) a.profile_of_user.push_back(p);
  return a;
}

// Requested file index per user; delivery is file-agnostic, the index only
// names whose file a scheduled packet belongs to.
struct DemandMap {
  std::vector<int> requested_file;  // index k-1, value in [1, N]

  int request_of(user_id k) const { return requested_file[static_cast<std::size_t>(k - 1)]; }
  int num_users() const { return static_cast<int>(requested_file.size()); }
};

inline DemandMap default_demands(int num_users, int library_size) {
  DemandMap d;
  d.requested_file.resize(num_users);
  for (int k = 1; k <= num_users; ++k) d.requested_file[k - 1] = (k - 1) % library_size + 1;
  return d;
}

}  // namespace ccsched
