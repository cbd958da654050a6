// nsac: command-line driver for the two-phase flow solver.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nsac/config.hpp"
#include "nsac/mms_oracle.hpp"
#include "nsac/runner.hpp"

namespace {

struct Overrides {
  std::string config_file;
  std::string preset;
  std::map<std::string, std::optional<std::string>> flags;
  std::vector<std::string> set;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key=value configuration file");
    cmd->add_option("--preset", preset, "named preset applied before the file");
    const std::vector<std::pair<std::string, std::string>> options{
        {"--method", "method"},  {"--beta", "beta"},       {"--dt", "dt"},
        {"--mesh-n", "mesh_n"},  {"--t-final", "t_final"}, {"--tol", "tol_fixed_point"},
        {"--out", "output_dir"}, {"--scenario", "scenario"}};
    for (const auto& [flag, key] : options)
      cmd->add_option(flag, flags[key], "overrides '" + key + "'");
    cmd->add_option("--set", set, "any key=value override (repeatable)");
  }

  nsac::RunConfig resolve() const {
    nsac::ConfigBuilder b;
    if (!preset.empty()) b.apply_preset(preset);
    if (!config_file.empty()) b.apply_file(config_file);
    for (const auto& [key, value] : flags)
      if (value) b.apply_override(key, *value);
    for (const auto& kv : set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw nsac::ConfigError("--set expects key=value, got '" + kv + "'", 0);
      b.apply_override(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return b.finish();
  }
};

std::string keys_help() {
  std::ostringstream s;
  s << "\nConfiguration keys (key=value, numbers may be fractions like 1/1300):\n";
  for (const auto& k : nsac::config_keys()) s << "  " << k.key << " [" << k.default_value << "]  " << k.description << '\n';
  s << "\nPresets:";
  for (const auto& p : nsac::preset_names()) s << ' ' << p;
  s << "\nExit codes: 0 success, 1 non-convergence or failed strict monitor, 2 configuration error.\n";
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Navier-Stokes / Allen-Cahn two-phase flow solver"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "run one simulation");
  run_opts.add_to(run);
  run->footer(keys_help());

  Overrides sweep_opts;
  std::string betas, methods;
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "one run per method and beta; writes sweep.csv");
  sweep_opts.add_to(sweep);
  sweep->add_option("--betas", betas, "comma separated beta values");
  sweep->add_option("--methods", methods, "comma separated methods (default fin,fip)");
  sweep->add_option("--jobs", jobs, "independent runs in parallel")->check(CLI::PositiveNumber);
  sweep->footer(keys_help());

  int points = 100;
  unsigned seed = 20240611;
  double tol_ac = 1e-6, tol_ns = 1e-5;
  auto* verify = app.add_subcommand("verify-mms-forcing", "compare analytic forcing with finite differences");
  verify->add_option("--points", points, "random sample points")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol-ac", tol_ac, "relative tolerance, phase equation");
  verify->add_option("--tol-ns", tol_ns, "relative tolerance, momentum equation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nsac::exit_config_error;
  }

  try {
    if (*run) {
      const nsac::RunConfig config = run_opts.resolve();
      const auto outcome = nsac::execute_run(config, std::cout);
      return outcome.exit_code;
    }
    if (*sweep) {
      if (!betas.empty()) sweep_opts.set.push_back("beta_sweep=" + betas);
      if (!methods.empty()) sweep_opts.set.push_back("sweep_methods=" + methods);
      const nsac::RunConfig config = sweep_opts.resolve();
      if (config.beta_sweep.empty()) throw nsac::ConfigError("no beta values (use --betas or beta_sweep=)", 0);
      return nsac::execute_sweep(config, jobs, std::cout);
    }
    if (*verify) {
      const nsac::ManufacturedSolution mms;
      const auto check = nsac::fd::verify_forcing(mms, points, seed, tol_ac, tol_ns);
      std::cout << "points " << check.points << "\n"
                << "phase forcing max relative error " << nsac::format_17(check.max_rel_error_ac) << " (tol "
                << tol_ac << ")\n"
                << "momentum forcing max relative error " << nsac::format_17(check.max_rel_error_ns) << " (tol "
                << tol_ns << ")\n"
                << (check.passed ? "PASS" : "FAIL") << '\n';
      return check.passed ? 0 : 1;
    }
  } catch (const nsac::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return nsac::exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nsac::exit_run_failed;
  }
  return 0;
}
