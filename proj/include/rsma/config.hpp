#ifndef RSMA_CONFIG_HPP
#define RSMA_CONFIG_HPP

#include "rsma/baselines.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsma {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// One of P (dB), eps_cop, eps_sop, J, N_e.
struct SweepSpec {
  std::string name;
  std::string parameter;
  std::vector<double> values;
  std::vector<Scheme> schemes;

  void validate() const;
};

bool is_sweep_parameter(const std::string& name);

struct ValidateSettings {
  int scenarios = 50;
  long long trials = 1000000;
  double resolution = 0.005;  // smallest |closed - MC| the suite must be able to see at 3 SE
};

struct ScenarioConfig {
  ScenarioParams scenario;
  OutageSpec outage;
  SolverConfig solver;
  double power_db = 100.0;  // total budget relative to the noise power
  int trials = 50;
  std::uint64_t seed = 20261014;
  int threads = 1;
  std::vector<Scheme> schemes = all_schemes();
  std::optional<SweepSpec> sweep;
  ValidateSettings check;

  void validate() const;
  double total_power() const;
  // Canonical text form; parse_config(to_text()) reproduces the config.
  std::string to_text() const;
};

ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>");
ScenarioConfig load_config(const std::string& path);

// Applies a sweep value to a copy of the config.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& parameter, double value);

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
// Base presets (desk, paper) replace the config; sweep presets only set the sweep.
bool is_base_preset(const std::string& name);
ScenarioConfig preset_config(const std::string& name);
SweepSpec preset_sweep(const std::string& name);

}  // namespace rsma

#endif  // RSMA_CONFIG_HPP
