// Experiment harness: penalized multiscale denoising/deconvolution plus the
// solver demos. See README.md for usage.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "mrsc/config_file.hpp"
#include "mrsc/experiment.hpp"
#include "mrsc/regularizer.hpp"

namespace {

// Every config key is exposed as a --key flag; flags override the config
// file, which overrides defaults.
const std::vector<std::string> kKeys = {
    "n",          "sigma",       "seed",        "q_rule",         "q_abs",
    "lmin",       "lmax",        "sizes",       "scaling",        "regularizer",
    "alpha",      "eta",         "rho0",        "growth",         "gamma0",
    "gamma_decay", "rho_cap",    "final_tol",   "max_stages",     "max_stage_iters",
    "psf",        "input",       "out",         "boundary"};

void register_keys(CLI::App* cmd, std::map<std::string, std::string>& overrides) {
  for (const std::string& key : kKeys) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [&overrides, key](const std::string& value) { overrides[key] = value; },
        "set config key " + key);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximal splitting with exact multiscale penalization"};
  app.require_subcommand(1);

  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::string mode_name;

  for (const char* name : {"denoise1d", "deconv2d", "lines-demo", "bridge-test"}) {
    CLI::App* cmd = app.add_subcommand(name);
    cmd->add_option("--config", config_path, "key = value config file");
    register_keys(cmd, overrides);
    cmd->callback([&mode_name, name]() { mode_name = name; });
  }

  CLI11_PARSE(app, argc, argv);

  mrsc::ExperimentConfig config;
  try {
    mrsc::apply_config_entries({{"mode", mode_name}}, config);
    if (config.mode == mrsc::ExperimentMode::deconv2d) {
      config.regularizer = mrsc::RegularizerKind::squared_norm;
      config.q_rule = mrsc::QRule::three_sigma;
    }
    if (!config_path.empty()) {
      mrsc::apply_config_entries(mrsc::read_config_file(config_path), config);
      // The subcommand names the mode; a mode key in the file cannot override it.
      mrsc::apply_config_entries({{"mode", mode_name}}, config);
    }
    mrsc::apply_config_entries(overrides, config);
  } catch (const std::exception& bad) {
    std::cerr << "configuration error: " << bad.what() << '\n';
    return mrsc::kExitIoError;
  }

  return mrsc::run_experiment(config);
}
