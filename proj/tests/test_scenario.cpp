#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

#include "ccsched/experiment.hpp"
#include "ccsched/scenario.hpp"

using namespace ccsched;

namespace {

double sample_std(const std::vector<int>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double acc = 0.0;
  for (int x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / (v.size() - 1));
}

}  // namespace

TEST_CASE("presets") {
  CHECK(preset("uniform").eta == std::vector<int>(10, 5));
  CHECK(preset("scenario1").eta == std::vector<int>{5, 4, 5, 5, 4, 3, 6, 6, 5, 7});
  CHECK(preset("scenario2").eta == std::vector<int>{9, 3, 1, 4, 5, 7, 2, 6, 5, 8});
  CHECK(preset("scenario3").eta == std::vector<int>{8, 3, 8, 0, 4, 10, 7, 4, 0, 6});
  CHECK_THROWS_AS(preset("scenario9"), ConfigError);

  for (const char* name : {"uniform", "scenario1", "scenario2", "scenario3"}) {
    const auto cfg = preset(name);
    CHECK(cfg.num_users == 50);
    CHECK(cfg.cache_ratio == Rational{1, 10});
    CHECK(cfg.alpha == 10);
    CHECK(cfg.num_tx_antennas == 12);
    CHECK(std::accumulate(cfg.eta.begin(), cfg.eta.end(), 0) == 50);
  }

  CHECK(sample_std(preset("scenario1").eta) == Catch::Approx(1.15).margin(0.005));
  CHECK(sample_std(preset("scenario2").eta) == Catch::Approx(2.58).margin(0.005));
  CHECK(sample_std(preset("scenario3").eta) == Catch::Approx(3.40).margin(0.005));
}

TEST_CASE("eta_hat policy resolves to max profile length by default") {
  ScenarioConfig cfg = preset("scenario3");
  CHECK(resolve_eta_hat(cfg, cfg.eta) == 10);
  cfg.eta_hat = 9;
  CHECK(resolve_eta_hat(cfg, cfg.eta) == 9);
}

TEST_CASE("config files parse") {
  std::istringstream in(
      "# demo\n"
      "scenario scenario2\n"
      "eta_hat max\n"
      "beamformer zf\n"
      "mode unicast-only\n"
      "snr_db 0:30:10\n"
      "trials 25\n"
      "seed 9\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.name == "scenario2");
  CHECK(cfg.eta == preset("scenario2").eta);
  CHECK(cfg.eta_hat == 0);
  CHECK(cfg.beamformer == Beamformer::ZeroForcing);
  CHECK(cfg.mode == DeliveryMode::UnicastOnly);
  CHECK(cfg.snr_db == std::vector<double>{0, 10, 20, 30});
  CHECK(cfg.trials == 25);
  CHECK(cfg.seed == 9);
}

TEST_CASE("custom network keys parse") {
  std::istringstream in(
      "name tiny\n"
      "num_users 10\n"
      "gamma 1/4\n"
      "alpha 4\n"
      "ntx 6\n"
      "eta 2,2,3,3\n"
      "eta_hat 2\n"
      "snr_db 5,15\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.num_users == 10);
  CHECK(cfg.cache_ratio == Rational{1, 4});
  CHECK(cfg.eta == std::vector<int>{2, 2, 3, 3});
  CHECK(cfg.snr_db == std::vector<double>{5, 15});
}

TEST_CASE("bad configs are rejected") {
  std::istringstream bad_key("bogus 3\n");
  CHECK_THROWS_AS(parse_config(bad_key), ConfigError);
  std::istringstream bad_value("trials many\n");
  CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
  std::istringstream bad_mode("mode broadcast\n");
  CHECK_THROWS_AS(parse_config(bad_mode), ConfigError);
}

TEST_CASE("CSV output") {
  RateCurve curve;
  curve.scenario = "scenario1";
  curve.eta_hat = 7;
  curve.mode = "cc";
  curve.seed = 42;

  SECTION("empty grid leaves just the header") {
    CHECK(to_csv(curve) == "scenario,eta_hat,mode,snr_db,mean_rate_nats,stderr,trials,seed\n");
  }
  SECTION("one row per grid point, deterministic text") {
    curve.points.push_back({10.0, 1.25, 0.01, 500});
    curve.points.push_back({15.0, 1.5, 0.02, 500});
    const std::string want =
        "scenario,eta_hat,mode,snr_db,mean_rate_nats,stderr,trials,seed\n"
        "scenario1,7,cc,10,1.25,0.01,500,42\n"
        "scenario1,7,cc,15,1.5,0.02,500,42\n";
    CHECK(to_csv(curve) == want);
  }
}

TEST_CASE("reruns with the same seed produce byte-identical CSV") {
  ScenarioConfig cfg;
  cfg.name = "tiny";
  cfg.num_users = 8;
  cfg.library_size = 8;
  cfg.cache_ratio = Rational{1, 4};
  cfg.alpha = 4;
  cfg.num_tx_antennas = 6;
  cfg.eta = {2, 2, 2, 2};
  cfg.snr_db = {0, 20};
  cfg.trials = 10;
  cfg.seed = 5;
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  CHECK(to_csv(a.curve) == to_csv(b.curve));
}

TEST_CASE("unicast-only mode plans the whole demand through the greedy phase") {
  ScenarioConfig cfg;
  cfg.name = "baseline";
  cfg.num_users = 8;
  cfg.library_size = 8;
  cfg.cache_ratio = Rational{1, 4};
  cfg.alpha = 4;
  cfg.num_tx_antennas = 6;
  cfg.eta = {2, 2, 2, 2};
  cfg.mode = DeliveryMode::UnicastOnly;
  const auto built = build_delivery_schedule(cfg);
  CHECK(built.schedule.cc.empty());
  CHECK(!built.schedule.unicast.empty());
  CHECK(verify_built(built).ok());
  // 8 users x 3 uncached packets x 3 subpackets, 4 users served per slot.
  CHECK(built.schedule.unicast.size() == 8u * 3u * 3u / 4u);
}

TEST_CASE("verification gate rejects a broken schedule") {
  ScenarioConfig cfg;
  cfg.name = "tiny";
  cfg.num_users = 8;
  cfg.library_size = 8;
  cfg.cache_ratio = Rational{1, 4};
  cfg.alpha = 4;
  cfg.num_tx_antennas = 6;
  cfg.eta = {2, 2, 2, 2};
  auto built = build_delivery_schedule(cfg);
  built.schedule.unicast.clear();  // lose the residual deliveries
  built.schedule.cc.pop_back();
  CHECK_FALSE(verify_built(built).ok());
}
