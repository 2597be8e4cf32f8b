#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "ccsched/errors.hpp"
#include "ccsched/schedule.hpp"

namespace ccsched {

// Beam for one data term: unit norm, orthogonal to every nulled channel, and
// within that subspace aligned with the recipient. Rows of `h` are channels.
inline Eigen::VectorXcd zf_beam(const Eigen::MatrixXcd& h, int recipient_row,
                                const std::vector<int>& null_rows) {
  const int ntx = static_cast<int>(h.cols());
  const int n = static_cast<int>(null_rows.size());
  if (n >= ntx)
    throw InfeasibleNullingError("cannot null " + std::to_string(n) + " users with " +
                                 std::to_string(ntx) + " antennas");
  Eigen::VectorXcd target = h.row(recipient_row).adjoint();
  if (n > 0) {
    Eigen::MatrixXcd nulled(ntx, n);
    for (int i = 0; i < n; ++i) nulled.col(i) = h.row(null_rows[i]).adjoint();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(nulled);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(ntx, n);
    target -= q * (q.adjoint() * target);
    // One re-projection pass keeps residuals near machine precision.
    target -= q * (q.adjoint() * target);
  }
  const double norm = target.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw InfeasibleNullingError("recipient channel lies inside the nulled subspace");
  return target / norm;
}

// Largest relative leakage of `beam` into the nulled channels.
inline double nulling_residual(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& beam,
                               const std::vector<int>& null_rows) {
  double worst = 0.0;
  for (int r : null_rows) {
    const double denom = h.row(r).norm() * beam.norm();
    if (denom > 0.0) worst = std::max(worst, std::abs((h.row(r) * beam).value()) / denom);
  }
  return worst;
}

// Per-transmission SINR structure with beam directions fixed. gain(u, t) is
// the power gain of term t's beam at the channel of term u's recipient;
// counted(u, t) marks interference the receiver can neither cache out nor
// rely on the beamformer to null.
struct TransmissionGains {
  Eigen::MatrixXd gain;
  std::vector<std::vector<std::uint8_t>> counted;
  bool any_residual_interference = false;
};

using CachePredicate = std::function<bool(user_id, int packet)>;

inline TransmissionGains compute_gains(const Eigen::MatrixXcd& h,
                                       const std::vector<Eigen::VectorXcd>& beams,
                                       const Transmission& tx, const CachePredicate& caches) {
  const int n = static_cast<int>(tx.terms.size());
  TransmissionGains g;
  g.gain.resize(n, n);
  g.counted.assign(n, std::vector<std::uint8_t>(n, 0));
  for (int u = 0; u < n; ++u) {
    const user_id observer = tx.terms[u].recipient;
    for (int t = 0; t < n; ++t) {
      const std::complex<double> proj = (h.row(u) * beams[t]).value();
      g.gain(u, t) = std::norm(proj);
      if (t == u) continue;
      const auto& term = tx.terms[t];
      const bool nulled = std::find(term.nulling.begin(), term.nulling.end(), observer) !=
                          term.nulling.end();
      const bool cached = caches(observer, term.packet);
      if (!nulled && !cached) {
        g.counted[u][t] = 1;
        g.any_residual_interference = true;
      }
    }
  }
  return g;
}

inline double sinr_of(const TransmissionGains& g, const Eigen::VectorXd& powers, int u,
                      double noise_power) {
  double interference = 0.0;
  for (int t = 0; t < g.gain.cols(); ++t)
    if (g.counted[u][t]) interference += powers[t] * g.gain(u, t);
  return powers[u] * g.gain(u, u) / (noise_power + interference);
}

inline double min_sinr(const TransmissionGains& g, const Eigen::VectorXd& powers,
                       double noise_power) {
  double worst = std::numeric_limits<double>::infinity();
  for (int u = 0; u < g.gain.rows(); ++u)
    worst = std::min(worst, sinr_of(g, powers, u, noise_power));
  return worst;
}

// Fixed-point feasibility probe: the cheapest power vector reaching `target`
// at every user, or an empty vector when the target needs more than `ptx`.
inline Eigen::VectorXd powers_for_target(const TransmissionGains& g, double target, double ptx,
                                         double noise_power) {
  const int n = static_cast<int>(g.gain.rows());
  Eigen::VectorXd powers = Eigen::VectorXd::Zero(n);
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXd next(n);
    double delta = 0.0;
    for (int u = 0; u < n; ++u) {
      double interference = 0.0;
      for (int t = 0; t < n; ++t)
        if (g.counted[u][t]) interference += powers[t] * g.gain(u, t);
      next[u] = target * (noise_power + interference) / g.gain(u, u);
      delta = std::max(delta, std::abs(next[u] - powers[u]));
    }
    powers = next;
    if (powers.sum() > ptx) return {};
    if (delta <= 1e-12 * (1.0 + powers.maxCoeff())) break;
  }
  return powers;
}

struct PowerAllocation {
  Eigen::VectorXd powers;
  double min_sinr = 0.0;
  int iterations = 0;
};

// Equal power per term; the ZF baseline allocation.
inline PowerAllocation equal_power_allocation(const TransmissionGains& g, double ptx,
                                              double noise_power) {
  const int n = static_cast<int>(g.gain.rows());
  PowerAllocation out;
  out.powers = Eigen::VectorXd::Constant(n, ptx / n);
  out.min_sinr = min_sinr(g, out.powers, noise_power);
  return out;
}

// Max-min SINR power allocation over fixed (hard-nulling) beam directions:
// bisection on the common SINR target, each probe solved by fixed-point
// iteration. The best feasible target only ever grows, so the iterate
// sequence is monotone and never falls below the equal-power baseline.
inline PowerAllocation maxmin_power_allocation(const TransmissionGains& g, double ptx,
                                               double noise_power, int max_iterations = 100,
                                               double tolerance = 1e-6) {
  const int n = static_cast<int>(g.gain.rows());
  PowerAllocation best = equal_power_allocation(g, ptx, noise_power);
  if (n == 1) {
    best.powers[0] = ptx;
    best.min_sinr = ptx * g.gain(0, 0) / noise_power;
    return best;
  }
  double lo = best.min_sinr;
  double hi = std::numeric_limits<double>::infinity();
  for (int u = 0; u < n; ++u) hi = std::min(hi, ptx * g.gain(u, u) / noise_power);

  int iter = 0;
  for (; iter < max_iterations && hi - lo > tolerance * std::max(1.0, lo); ++iter) {
    const double target = 0.5 * (lo + hi);
    Eigen::VectorXd powers = powers_for_target(g, target, ptx, noise_power);
    if (powers.size() == 0) {
      hi = target;
      continue;
    }
    // Spend the slack: scaling all powers up never lowers any SINR here
    // because signal and interference scale together while noise does not.
    if (powers.sum() > 0.0) powers *= ptx / powers.sum();
    const double achieved = min_sinr(g, powers, noise_power);
    if (achieved > best.min_sinr) {
      best.powers = powers;
      best.min_sinr = achieved;
    }
    if (achieved >= target)
      lo = target;
    else
      hi = target;
  }
  best.iterations = iter;
  return best;
}

// Beams, powers and per-user SINRs for one transmission vector.
struct BeamformedTransmission {
  std::vector<Eigen::VectorXcd> beams;
  Eigen::VectorXd powers;
  std::vector<double> sinr;
  double min_sinr = 0.0;
  int iterations = 0;
};

namespace detail {

inline BeamformedTransmission beamform(const Eigen::MatrixXcd& h, const Transmission& tx,
                                       const CachePredicate& caches, double ptx,
                                       double noise_power, bool maxmin, int max_iterations,
                                       double tolerance) {
  const int n = static_cast<int>(tx.terms.size());
  std::map<user_id, int> row_of;
  for (int i = 0; i < n; ++i) row_of[tx.terms[i].recipient] = i;

  BeamformedTransmission out;
  out.beams.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> null_rows;
    for (user_id u : tx.terms[i].nulling) {
      const auto it = row_of.find(u);
      if (it != row_of.end()) null_rows.push_back(it->second);
    }
    out.beams.push_back(zf_beam(h, i, null_rows));
  }
  const TransmissionGains gains = compute_gains(h, out.beams, tx, caches);
  const PowerAllocation alloc = maxmin
                                    ? maxmin_power_allocation(gains, ptx, noise_power,
                                                              max_iterations, tolerance)
                                    : equal_power_allocation(gains, ptx, noise_power);
  out.powers = alloc.powers;
  out.min_sinr = alloc.min_sinr;
  out.iterations = alloc.iterations;
  out.sinr.resize(n);
  for (int u = 0; u < n; ++u) out.sinr[u] = sinr_of(gains, alloc.powers, u, noise_power);
  return out;
}

}  // namespace detail

// ZF directions with equal power per term.
inline BeamformedTransmission zf_equal_power(const Eigen::MatrixXcd& h, const Transmission& tx,
                                             const CachePredicate& caches, double ptx,
                                             double noise_power) {
  return detail::beamform(h, tx, caches, ptx, noise_power, false, 0, 0.0);
}

// Hard-nulling beams with max-min SINR power allocation.
inline BeamformedTransmission maxmin_beams(const Eigen::MatrixXcd& h, const Transmission& tx,
                                           const CachePredicate& caches, double ptx,
                                           double noise_power, int max_iterations = 100,
                                           double tolerance = 1e-6) {
  return detail::beamform(h, tx, caches, ptx, noise_power, true, max_iterations, tolerance);
}

// Airtime of one transmission: the slowest served user sets the pace.
inline double transmission_time(const BeamformedTransmission& bt, double subpacket_nats) {
  if (!(bt.min_sinr > 0.0) || !std::isfinite(bt.min_sinr))
    throw InfiniteTimeError("a served user has zero SINR; transmission cannot complete");
  return subpacket_nats / std::log1p(bt.min_sinr);
}

}  // namespace ccsched
