#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ccsched/elevation.hpp"
#include "ccsched/errors.hpp"
#include "ccsched/profiles.hpp"
#include "ccsched/rate.hpp"
#include "ccsched/rational.hpp"

namespace ccsched {

enum class DeliveryMode { CodedCaching, UnicastOnly };

// One runnable experiment: network parameters, profile population, eta_hat
// policy and simulation knobs.
struct ScenarioConfig {
  std::string name = "custom";
  int num_users = 50;
  int library_size = 50;
  double file_size = 1.0;
  Rational cache_ratio{1, 10};
  int alpha = 10;
  int num_tx_antennas = 12;

  std::vector<int> eta;  // explicit profile lengths; empty means use policy below
  AssignPolicy assign_policy = AssignPolicy::RoundRobin;

  int eta_hat = 0;  // 0 means "max eta_p"
  ExclusionPolicy exclusion_policy = ExclusionPolicy::HighestIndex;

  Beamformer beamformer = Beamformer::MaxMin;
  DeliveryMode mode = DeliveryMode::CodedCaching;

  std::vector<double> snr_db = {0, 5, 10, 15, 20, 25, 30};
  int trials = 500;
  std::uint64_t seed = 42;
  int threads = 0;
};

// Table-driven scenario presets for the 50-user reference network.
inline ScenarioConfig preset(const std::string& name) {
  ScenarioConfig cfg;
  cfg.name = name;
  if (name == "uniform") {
    cfg.eta = {5, 5, 5, 5, 5, 5, 5, 5, 5, 5};
  } else if (name == "scenario1") {
    cfg.eta = {5, 4, 5, 5, 4, 3, 6, 6, 5, 7};
  } else if (name == "scenario2") {
    cfg.eta = {9, 3, 1, 4, 5, 7, 2, 6, 5, 8};
  } else if (name == "scenario3") {
    cfg.eta = {8, 3, 8, 0, 4, 10, 7, 4, 0, 6};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return cfg;
}

inline int resolve_eta_hat(const ScenarioConfig& cfg, const std::vector<int>& eta) {
  if (cfg.eta_hat > 0) return cfg.eta_hat;
  return *std::max_element(eta.begin(), eta.end());
}

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

// "0:30:5" or "0,10,20".
inline std::vector<double> parse_snr_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::istringstream is(text);
    std::string a, b, c;
    std::getline(is, a, ':');
    std::getline(is, b, ':');
    std::getline(is, c, ':');
    const double start = std::stod(a), stop = std::stod(b);
    const double step = c.empty() ? 5.0 : std::stod(c);
    if (step <= 0.0) throw ConfigError("SNR step must be positive");
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::vector<double> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  return out;
}

}  // namespace detail

// Flat key-value text, one `key value` pair per line, '#' comments.
inline ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  bool from_preset = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string key;
    if (!(is >> key)) continue;
    std::string value;
    std::getline(is, value);
    const auto first = value.find_first_not_of(" \t");
    value = first == std::string::npos ? "" : value.substr(first);
    const auto last = value.find_last_not_of(" \t\r");
    if (last != std::string::npos) value.erase(last + 1);
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": '" + key +
                                         "' has no value");
    try {
      if (key == "scenario" || key == "name") {
        try {
          const ScenarioConfig base = preset(value);
          cfg.eta = base.eta;
          from_preset = true;
        } catch (const ConfigError&) {
          // free-form run name
        }
        cfg.name = value;
      } else if (key == "num_users") {
        cfg.num_users = std::stoi(value);
      } else if (key == "library_size") {
        cfg.library_size = std::stoi(value);
      } else if (key == "file_size") {
        cfg.file_size = std::stod(value);
      } else if (key == "gamma") {
        cfg.cache_ratio = parse_rational(value);
      } else if (key == "alpha") {
        cfg.alpha = std::stoi(value);
      } else if (key == "ntx") {
        cfg.num_tx_antennas = std::stoi(value);
      } else if (key == "eta") {
        cfg.eta = detail::parse_int_list(value);
      } else if (key == "assign") {
        if (value == "round-robin")
          cfg.assign_policy = AssignPolicy::RoundRobin;
        else if (value == "seeded-uniform")
          cfg.assign_policy = AssignPolicy::SeededUniform;
        else
          throw ConfigError("unknown assignment policy '" + value + "'");
      } else if (key == "eta_hat") {
        cfg.eta_hat = value == "max" ? 0 : std::stoi(value);
      } else if (key == "exclusion") {
        if (value == "highest-index")
          cfg.exclusion_policy = ExclusionPolicy::HighestIndex;
        else if (value == "seeded-random")
          cfg.exclusion_policy = ExclusionPolicy::SeededRandom;
        else
          throw ConfigError("unknown exclusion policy '" + value + "'");
      } else if (key == "beamformer") {
        if (value == "zf")
          cfg.beamformer = Beamformer::ZeroForcing;
        else if (value == "maxmin")
          cfg.beamformer = Beamformer::MaxMin;
        else
          throw ConfigError("unknown beamformer '" + value + "'");
      } else if (key == "mode") {
        if (value == "cc")
          cfg.mode = DeliveryMode::CodedCaching;
        else if (value == "unicast-only")
          cfg.mode = DeliveryMode::UnicastOnly;
        else
          throw ConfigError("unknown mode '" + value + "'");
      } else if (key == "snr_db") {
        cfg.snr_db = detail::parse_snr_grid(value);
      } else if (key == "trials") {
        cfg.trials = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "threads") {
        cfg.threads = std::stoi(value);
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad value '" + value +
                        "' for key '" + key + "'");
    }
  }
  (void)from_preset;
  return cfg;
}

inline ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

inline const char* mode_name(DeliveryMode m) {
  return m == DeliveryMode::CodedCaching ? "cc" : "unicast-only";
}

inline const char* beamformer_name(Beamformer b) {
  return b == Beamformer::ZeroForcing ? "zf" : "maxmin";
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string to_csv(const RateCurve& curve) {
  std::string out = "scenario,eta_hat,mode,snr_db,mean_rate_nats,stderr,trials,seed\n";
  for (const auto& p : curve.points) {
    out += curve.scenario + "," + std::to_string(curve.eta_hat) + "," + curve.mode + "," +
           format_double(p.snr_db) + "," + format_double(p.mean_rate) + "," +
           format_double(p.std_error) + "," + std::to_string(p.trials) + "," +
           std::to_string(curve.seed) + "\n";
  }
  return out;
}

inline void emit_csv(const RateCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV to '" + path + "'");
  out << to_csv(curve);
}

}  // namespace ccsched
