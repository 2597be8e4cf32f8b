// Command-line front end: run experiments, verify schedule dumps against a
// config, and print schedule dumps for golden tests.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ccsched/ccsched.hpp"

namespace {

struct CommonOptions {
  std::string preset_name;
  std::string config_path;
  std::string eta_hat = "";
  std::string beamformer = "";
  std::string mode = "";
  std::string snr = "";
  int trials = -1;
  long long seed = -1;
  int threads = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--preset", opt.preset_name, "preset name: uniform|scenario1|scenario2|scenario3");
  cmd->add_option("--config", opt.config_path, "flat key-value config file");
  cmd->add_option("--eta-hat", opt.eta_hat, "common profile length, integer or 'max'");
  cmd->add_option("--beamformer", opt.beamformer, "zf|maxmin");
  cmd->add_option("--mode", opt.mode, "cc|unicast-only");
  cmd->add_option("--snr", opt.snr, "SNR grid in dB, 'start:stop:step' or comma list");
  cmd->add_option("--trials", opt.trials, "Monte-Carlo trials");
  cmd->add_option("--seed", opt.seed, "master seed");
  cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
}

ccsched::ScenarioConfig resolve_config(const CommonOptions& opt) {
  if (opt.preset_name.empty() == opt.config_path.empty())
    throw ccsched::ConfigError("give exactly one of --preset or --config");
  ccsched::ScenarioConfig cfg = opt.preset_name.empty()
                                    ? ccsched::parse_config_file(opt.config_path)
                                    : ccsched::preset(opt.preset_name);
  if (!opt.eta_hat.empty())
    cfg.eta_hat = opt.eta_hat == "max" ? 0 : std::stoi(opt.eta_hat);
  if (!opt.beamformer.empty()) {
    if (opt.beamformer == "zf")
      cfg.beamformer = ccsched::Beamformer::ZeroForcing;
    else if (opt.beamformer == "maxmin")
      cfg.beamformer = ccsched::Beamformer::MaxMin;
    else
      throw ccsched::ConfigError("unknown beamformer '" + opt.beamformer + "'");
  }
  if (!opt.mode.empty()) {
    if (opt.mode == "cc")
      cfg.mode = ccsched::DeliveryMode::CodedCaching;
    else if (opt.mode == "unicast-only")
      cfg.mode = ccsched::DeliveryMode::UnicastOnly;
    else
      throw ccsched::ConfigError("unknown mode '" + opt.mode + "'");
  }
  if (!opt.snr.empty()) cfg.snr_db = ccsched::detail::parse_snr_grid(opt.snr);
  if (opt.trials >= 0) cfg.trials = opt.trials;
  if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.threads >= 0) cfg.threads = opt.threads;
  return cfg;
}

int cmd_run(const CommonOptions& opt, const std::string& out_dir) {
  const ccsched::ScenarioConfig cfg = resolve_config(opt);
  ccsched::ExperimentResult result;
  const auto run_dir = ccsched::run_experiment_to_dir(cfg, out_dir, &result);
  std::cout << "verification: " << (result.report.ok() ? "pass" : "FAIL") << "\n";
  std::cout << "CC transmissions: " << result.built.schedule.cc.size()
            << ", unicast slots: " << result.built.schedule.unicast.size() << "\n";
  for (const auto& p : result.curve.points)
    std::cout << "SNR " << p.snr_db << " dB: rate " << p.mean_rate << " +/- " << p.std_error
              << " nats/s\n";
  std::cout << "outputs in " << run_dir.string() << "\n";
  return 0;
}

int cmd_verify(const std::string& dump_path, const std::string& config_path) {
  std::ifstream in(dump_path, std::ios::binary);
  if (!in) throw ccsched::ConfigError("cannot open schedule dump '" + dump_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();

  ccsched::ScenarioConfig cfg = ccsched::parse_config_file(config_path);
  const ccsched::BuiltSchedule built = ccsched::build_delivery_schedule(cfg);
  const auto report = ccsched::oracle::verify_all(buffer.str(), ccsched::oracle_context(built));
  std::cout << report.summary();
  return report.ok() ? 0 : 1;
}

int cmd_dump(const CommonOptions& opt, const std::string& stage, const std::string& out_path) {
  const ccsched::ScenarioConfig cfg = resolve_config(opt);
  const ccsched::BuiltSchedule built = ccsched::build_delivery_schedule(cfg);
  std::string text;
  if (stage == "virtual")
    text = ccsched::dump_schedule(built.virtual_schedule);
  else if (stage == "prestrip")
    text = ccsched::dump_schedule(built.elevated);
  else if (stage == "cc")
    text = ccsched::dump_schedule(built.schedule.cc);
  else if (stage == "unicast")
    text = ccsched::dump_schedule(built.schedule.unicast);
  else if (stage == "full")
    text = ccsched::dump_schedule(built.schedule);
  else
    throw ccsched::ConfigError("unknown stage '" + stage + "'");
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ccsched::ConfigError("cannot write '" + out_path + "'");
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded-caching delivery scheduler and link-level simulator"};
  app.require_subcommand(1);

  CommonOptions run_opt;
  std::string out_dir = "out";
  CLI::App* run = app.add_subcommand("run", "build, verify and simulate a scenario");
  add_common(run, run_opt);
  run->add_option("--out", out_dir, "output directory");

  std::string verify_dump, verify_config;
  CLI::App* verify = app.add_subcommand("verify", "check a schedule dump against a config");
  verify->add_option("dump", verify_dump, "schedule dump file")->required();
  verify->add_option("config", verify_config, "config file")->required();

  CommonOptions dump_opt;
  std::string stage = "full";
  std::string dump_out;
  CLI::App* dump = app.add_subcommand("dump-schedule", "print a schedule dump");
  add_common(dump, dump_opt);
  dump->add_option("--stage", stage, "virtual|prestrip|cc|unicast|full");
  dump->add_option("--out", dump_out, "write to file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opt, out_dir);
    if (verify->parsed()) return cmd_verify(verify_dump, verify_config);
    if (dump->parsed()) return cmd_dump(dump_opt, stage, dump_out);
  } catch (const ccsched::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ccsched::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
