// Command-line driver: run sweeps, validate closed forms, list presets.
#include "rsma/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Common {
  std::string config_path;
  std::string preset = "desk";
  long long seed = -1;
  long long trials = -1;
  int threads = 0;
  std::string out;
};

// Option-level problems count as configuration errors.
void check(const rsma::ScenarioConfig& cfg, const std::optional<rsma::SweepSpec>& sweep = std::nullopt) {
  try {
    cfg.validate();
    if (sweep) sweep->validate();
  } catch (const rsma::DomainError& e) {
    throw rsma::ConfigError("options", 0, e.what());
  }
}

rsma::ScenarioConfig resolve(const Common& c) {
  rsma::ScenarioConfig cfg = c.config_path.empty() ? rsma::preset_config(c.preset) : rsma::load_config(c.config_path);
  if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
  if (c.threads > 0) cfg.threads = c.threads;
  return cfg;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("config", c.config_path, "configuration file");
  app->add_option("--preset", c.preset, "base preset when no configuration file is given")->capture_default_str();
  app->add_option("--seed", c.seed, "master seed (overrides the configuration)")->check(CLI::NonNegativeNumber);
  app->add_option("--trials", c.trials, "trial count (overrides the configuration)")
      ->check(CLI::Range(1LL, 1000000000LL));
  app->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 1024));
  app->add_option("--out", c.out, "output CSV path, '-' for stdout")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure RSMA uplink simulator"};
  app.require_subcommand(1);

  Common run_opts;
  std::string sweep_name, convergence_path;
  auto* run = app.add_subcommand("run", "run the configured experiment or a sweep preset");
  add_common(run, run_opts);
  run->add_option("--sweep", sweep_name, "sweep preset (see 'presets')");
  run->add_option("--convergence", convergence_path, "also write inner-loop traces of trial 0 to this CSV");

  Common val_opts;
  int scenarios = 0;
  bool negative = false;
  auto* validate = app.add_subcommand("validate", "closed-form COP/SOP versus Monte-Carlo");
  add_common(validate, val_opts);
  validate->add_option("--scenarios", scenarios, "number of random scenarios")->check(CLI::Range(1, 1000000));
  validate->add_flag("--negative-control", negative, "check a deliberately corrupted COP closed form");

  auto* presets = app.add_subcommand("presets", "list shipped presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*presets) {
      for (const auto& name : rsma::preset_names())
        std::cout << name << (rsma::is_base_preset(name) ? " (base)  " : " (sweep) ") << rsma::preset_description(name)
                  << "\n";
      return 0;
    }
    if (*run) {
      auto cfg = resolve(run_opts);
      if (run_opts.trials > 0) cfg.trials = static_cast<int>(run_opts.trials);
      std::optional<rsma::SweepSpec> sweep;
      if (!sweep_name.empty()) sweep = rsma::preset_sweep(sweep_name);
      check(cfg, sweep);
      const auto res = rsma::run_experiment(cfg, sweep ? &*sweep : nullptr);
      rsma::emit_csv(res.table, run_opts.out);
      if (!convergence_path.empty())
        rsma::write_text(rsma::convergence_csv(cfg, sweep ? &*sweep : nullptr), convergence_path);
      return 0;
    }
    if (*validate) {
      auto cfg = resolve(val_opts);
      if (val_opts.trials > 0) cfg.check.trials = val_opts.trials;
      if (scenarios > 0) cfg.check.scenarios = scenarios;
      check(cfg);
      rsma::ValidateOptions opt;
      opt.corrupt_cop = negative;
      const auto rep = rsma::validate_closed_forms(cfg, opt);
      rsma::write_text(rep.to_csv(), val_opts.out);
      std::cerr << rep.summary() << "\n";
      return rep.ok() ? 0 : 1;
    }
  } catch (const rsma::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
