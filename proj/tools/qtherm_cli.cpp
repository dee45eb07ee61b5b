#include <CLI11.hpp>
#include <iostream>

#include "qtherm/campaign.hpp"
#include "qtherm/config.hpp"
#include "qtherm/errors.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;
};

int run(qtherm::Subcommand command, const Options& opt) {
  qtherm::CampaignConfig config;
  try {
    config = qtherm::load_config(opt.config);
    if (!opt.out.empty()) config.out_dir = opt.out;
    if (opt.workers > 0) config.workers = opt.workers;
    if (opt.seed) config.seed = *opt.seed;
    qtherm::validate(config);
  } catch (const qtherm::ConfigError& e) {
    std::cerr << "qtherm: config error: " << e.what() << "\n";
    return 2;
  }
  try {
    const auto outcome = qtherm::run_campaign(config, command, config.out_dir);
    std::cout << "wrote " << config.out_dir << "/sweep.csv and summary.json ("
              << outcome.points.size() << "/" << config.sizes.size() << " sizes)\n";
    return outcome.exit_code;
  } catch (const qtherm::ConfigError& e) {
    std::cerr << "qtherm: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qtherm: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-diagonalization campaigns for quench dynamics of a spin coupled to a bath"};
  app.set_version_flag("--version", std::string(qtherm::kVersion));
  app.require_subcommand(1);

  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"sweep", "Diagnostics over system sizes (IPR, fluctuations, averages)"},
      {"dynamics", "Sweep plus time series of the observable and survival probability"},
      {"otoc", "Sweep plus out-of-time-order correlator series"},
      {"spinboson", "Spin-boson sweep compared against Wigner-Weisskopf"},
      {"ansatz", "Matrix-element ansatz residuals and off-diagonal profile"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "Config file (key = value lines)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory (overrides out_dir)");
    sub->add_option("--workers", opt.workers, "Concurrent sweep points")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "RNG seed for random couplings");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const qtherm::Subcommand command = name == "sweep"       ? qtherm::Subcommand::sweep
                                     : name == "dynamics"  ? qtherm::Subcommand::dynamics
                                     : name == "otoc"      ? qtherm::Subcommand::otoc
                                     : name == "spinboson" ? qtherm::Subcommand::spinboson
                                                           : qtherm::Subcommand::ansatz;
  return run(command, opt);
}
