#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ccsched/elevation.hpp"
#include "ccsched/network.hpp"
#include "ccsched/oracle.hpp"
#include "ccsched/rate.hpp"
#include "ccsched/scenario.hpp"
#include "ccsched/unicast.hpp"
#include "ccsched/virtual_schedule.hpp"

namespace ccsched {

// Everything produced on the way from a scenario to a verified schedule.
struct BuiltSchedule {
  NetworkConfig net;
  VirtualConfig virtual_config;
  ProfileAssignment assignment;
  ProfileRoster roster;
  DemandMap demands;
  int per_packet_count = 0;
  std::vector<Transmission> virtual_schedule;
  std::vector<Transmission> elevated;  // pre-stripping
  DeliverySchedule schedule;           // kept CC + unicast plan
};

inline ProfileAssignment make_assignment(const ScenarioConfig& cfg, int profile_count) {
  if (!cfg.eta.empty()) {
    if (static_cast<int>(cfg.eta.size()) != profile_count)
      throw ConfigError("eta vector length " + std::to_string(cfg.eta.size()) +
                        " does not match P = " + std::to_string(profile_count));
    return assign_profiles_explicit(cfg.eta, cfg.num_users);
  }
  if (cfg.assign_policy == AssignPolicy::RoundRobin)
    return assign_profiles_round_robin(cfg.num_users, profile_count);
  return assign_profiles_seeded(cfg.num_users, profile_count, cfg.seed);
}

inline BuiltSchedule build_delivery_schedule(const ScenarioConfig& cfg) {
  BuiltSchedule built;
  built.net = make_network_config(cfg.num_users, cfg.library_size, cfg.file_size,
                                  cfg.cache_ratio, cfg.alpha, cfg.num_tx_antennas);
  const int p = built.net.profile_count;
  const int tbar = built.net.caching_gain;

  built.assignment = make_assignment(cfg, p);
  const std::vector<int> eta = built.assignment.lengths();
  const int eta_hat = resolve_eta_hat(cfg, eta);

  built.virtual_config = make_virtual_config(cfg.alpha, eta_hat, p, tbar);
  built.roster = pad_profiles(built.assignment.rosters(), eta_hat, cfg.exclusion_policy,
                              cfg.seed);
  built.demands = default_demands(cfg.num_users, cfg.library_size);
  built.per_packet_count = cc_subpacketization(built.virtual_config);

  if (cfg.mode == DeliveryMode::UnicastOnly) {
    // Baseline: the whole demand goes through the greedy unicast phase at the
    // same subpacket granularity the CC scheme would have used.
    for (int k = 1; k <= cfg.num_users; ++k)
      for (const auto& [packet, q] :
           excluded_user_demand(built.assignment.profile_of(k), p, tbar,
                                built.per_packet_count))
        built.schedule.residual.add(static_cast<user_id>(k), packet, q);
    built.schedule.unicast = plan_unicast(built.schedule.residual, cfg.alpha);
    return built;
  }

  built.virtual_schedule = generate_virtual_schedule(built.virtual_config);
  built.elevated = elevate_schedule(built.virtual_schedule, built.roster, built.virtual_config);

  std::vector<Transmission> stripped;
  stripped.reserve(built.elevated.size());
  for (const auto& tx : built.elevated) stripped.push_back(strip_phantoms(tx));

  DofFilterResult filtered = dof_filter(std::move(stripped), cfg.alpha);
  built.schedule.cc = std::move(filtered.kept);
  for (const auto& term : filtered.deferred)
    built.schedule.residual.add(term.recipient, term.packet, term.subpacket);
  for (user_id user : built.roster.excluded)
    for (const auto& [packet, q] :
         excluded_user_demand(built.assignment.profile_of(user), p, tbar,
                              built.per_packet_count))
      built.schedule.residual.add(user, packet, q);
  built.schedule.unicast = plan_unicast(built.schedule.residual, cfg.alpha);
  return built;
}

// Oracle context straight from config-level data.
inline oracle::OracleContext oracle_context(const BuiltSchedule& built) {
  oracle::OracleContext ctx;
  ctx.placement = build_placement_matrix(built.net.profile_count, built.net.caching_gain);
  ctx.profile_of = built.roster.profile_map();
  for (int k = 1; k <= built.net.num_users; ++k) {
    ctx.profile_of[static_cast<user_id>(k)] = built.assignment.profile_of(k);
    ctx.requesting.push_back(static_cast<user_id>(k));
  }
  ctx.per_packet_count = built.per_packet_count;
  return ctx;
}

// The verification gate: the oracle re-reads the serialized dump of the full
// schedule and must pass before any PHY trial runs.
inline oracle::VerificationReport verify_built(const BuiltSchedule& built) {
  return oracle::verify_all(dump_schedule(built.schedule), oracle_context(built));
}

inline CachePredicate cache_predicate(const BuiltSchedule& built) {
  const auto profile_of = oracle_context(built).profile_of;
  const int p = built.net.profile_count;
  const int tbar = built.net.caching_gain;
  return [profile_of, p, tbar](user_id user, int packet) {
    const auto it = profile_of.find(user);
    return it != profile_of.end() && profile_caches(it->second, packet, p, tbar);
  };
}

struct ExperimentResult {
  BuiltSchedule built;
  oracle::VerificationReport report;
  RateCurve curve;
};

inline RateCurve measure_rate(const BuiltSchedule& built, const ScenarioConfig& cfg) {
  SimParams params;
  params.num_tx_antennas = cfg.num_tx_antennas;
  params.snr_db = cfg.snr_db;
  params.trials = cfg.trials;
  params.master_seed = cfg.seed;
  params.beamformer = cfg.beamformer;
  params.threads = cfg.threads;
  params.subpacket_nats =
      built.net.file_size / (built.net.profile_count * built.per_packet_count);
  RateCurve curve = symmetric_rate(built.schedule, cache_predicate(built), params);
  curve.scenario = cfg.name;
  curve.eta_hat = built.virtual_config.eta_hat;
  curve.mode = mode_name(cfg.mode);
  return curve;
}

// Full pipeline: build, verify (hard gate), simulate. Throws Error subtypes;
// the CLI maps them to exit codes.
inline ExperimentResult run_experiment(const ScenarioConfig& cfg) {
  ExperimentResult result;
  result.built = build_delivery_schedule(cfg);
  result.report = verify_built(result.built);
  if (!result.report.ok())
    throw Error("schedule failed verification:\n" + result.report.summary());
  result.curve = measure_rate(result.built, cfg);
  return result;
}

// Run and persist outputs under <out_dir>/<scenario>_seed<seed>/.
inline std::filesystem::path run_experiment_to_dir(const ScenarioConfig& cfg,
                                                   const std::filesystem::path& out_dir,
                                                   ExperimentResult* out_result = nullptr) {
  ExperimentResult result = run_experiment(cfg);
  const std::filesystem::path run_dir =
      out_dir / (cfg.name + "_eta" + std::to_string(result.built.virtual_config.eta_hat) +
                 "_" + mode_name(cfg.mode) + "_seed" + std::to_string(cfg.seed));
  std::filesystem::create_directories(run_dir);
  emit_csv(result.curve, (run_dir / "rates.csv").string());
  {
    std::ofstream dump(run_dir / "schedule.txt", std::ios::binary);
    dump << dump_schedule(result.built.schedule);
  }
  {
    std::ofstream report(run_dir / "verification.txt", std::ios::binary);
    report << result.report.summary();
  }
  if (out_result) *out_result = std::move(result);
  return run_dir;
}

}  // namespace ccsched
