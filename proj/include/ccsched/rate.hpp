#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "ccsched/beamforming.hpp"
#include "ccsched/channel.hpp"
#include "ccsched/schedule.hpp"

namespace ccsched {

enum class Beamformer { ZeroForcing, MaxMin };

struct SimParams {
  int num_tx_antennas = 12;
  double noise_power = 1.0;
  std::vector<double> snr_db;
  int trials = 500;
  std::uint64_t master_seed = 42;
  Beamformer beamformer = Beamformer::MaxMin;
  int maxmin_iterations = 100;
  double maxmin_tolerance = 1e-6;
  double subpacket_nats = 0.0;
  int threads = 0;  // 0 = hardware concurrency
};

struct RatePoint {
  double snr_db = 0.0;
  double mean_rate = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

struct RateCurve {
  std::string scenario;
  int eta_hat = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<RatePoint> points;
};

// Symmetric rate = 1 / total delivery time across both phases. Every
// transmission sees an independent block-fading channel; the same channel
// draws are reused across the SNR grid, so a per-trial rate sample is exactly
// non-decreasing in SNR.
inline RateCurve symmetric_rate(const DeliverySchedule& schedule, const CachePredicate& caches,
                                const SimParams& params) {
  std::vector<const Transmission*> slots;
  for (const auto& tx : schedule.cc) slots.push_back(&tx);
  for (const auto& tx : schedule.unicast) slots.push_back(&tx);
  if (params.subpacket_nats <= 0.0) throw ConfigError("subpacket size must be positive");
  if (params.trials < 1) throw ConfigError("need at least one trial");

  const int num_snr = static_cast<int>(params.snr_db.size());
  std::vector<double> ptx(num_snr);
  for (int s = 0; s < num_snr; ++s)
    ptx[s] = params.noise_power * std::pow(10.0, params.snr_db[s] / 10.0);

  // samples[trial * num_snr + s]
  std::vector<double> samples(static_cast<std::size_t>(params.trials) * num_snr, 0.0);

  auto run_trial = [&](int trial) {
    std::vector<double> total_time(num_snr, 0.0);
    for (std::size_t idx = 0; idx < slots.size(); ++idx) {
      const Transmission& tx = *slots[idx];
      const int n = static_cast<int>(tx.terms.size());
      if (n == 0) continue;
      const Eigen::MatrixXcd h = sample_channel(
          n, params.num_tx_antennas,
          derive_seed(params.master_seed, static_cast<std::uint64_t>(trial), idx));

      // Beam directions do not depend on transmit power; gains are computed
      // once and the power allocation re-run per SNR point.
      std::map<user_id, int> row_of;
      for (int i = 0; i < n; ++i) row_of[tx.terms[i].recipient] = i;
      std::vector<Eigen::VectorXcd> beams;
      beams.reserve(n);
      for (int i = 0; i < n; ++i) {
        std::vector<int> null_rows;
        for (user_id u : tx.terms[i].nulling) {
          const auto it = row_of.find(u);
          if (it != row_of.end()) null_rows.push_back(it->second);
        }
        beams.push_back(zf_beam(h, i, null_rows));
      }
      const TransmissionGains gains = compute_gains(h, beams, tx, caches);

      for (int s = 0; s < num_snr; ++s) {
        const PowerAllocation alloc =
            params.beamformer == Beamformer::MaxMin
                ? maxmin_power_allocation(gains, ptx[s], params.noise_power,
                                          params.maxmin_iterations, params.maxmin_tolerance)
                : equal_power_allocation(gains, ptx[s], params.noise_power);
        if (!(alloc.min_sinr > 0.0) || !std::isfinite(alloc.min_sinr))
          throw InfiniteTimeError("zero SINR in trial " + std::to_string(trial));
        total_time[s] += params.subpacket_nats / std::log1p(alloc.min_sinr);
      }
    }
    for (int s = 0; s < num_snr; ++s)
      samples[static_cast<std::size_t>(trial) * num_snr + s] =
          total_time[s] > 0.0 ? 1.0 / total_time[s] : 0.0;
  };

  int num_threads = params.threads > 0 ? params.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
  if (num_threads < 1) num_threads = 1;
  num_threads = std::min(num_threads, params.trials);
  if (num_threads == 1) {
    for (int trial = 0; trial < params.trials; ++trial) run_trial(trial);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(num_threads);
    pool.reserve(num_threads);
    for (int w = 0; w < num_threads; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int trial = w; trial < params.trials; trial += num_threads) run_trial(trial);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& failure : failures)
      if (failure) std::rethrow_exception(failure);
  }

  RateCurve curve;
  curve.seed = params.master_seed;
  for (int s = 0; s < num_snr; ++s) {
    double sum = 0.0;
    for (int trial = 0; trial < params.trials; ++trial)
      sum += samples[static_cast<std::size_t>(trial) * num_snr + s];
    const double mean = sum / params.trials;
    double var = 0.0;
    for (int trial = 0; trial < params.trials; ++trial) {
      const double d = samples[static_cast<std::size_t>(trial) * num_snr + s] - mean;
      var += d * d;
    }
    var = params.trials > 1 ? var / (params.trials - 1) : 0.0;
    RatePoint point;
    point.snr_db = params.snr_db[s];
    point.mean_rate = mean;
    point.std_error = std::sqrt(var / params.trials);
    point.trials = params.trials;
    curve.points.push_back(point);
  }
  return curve;
}

}  // namespace ccsched
