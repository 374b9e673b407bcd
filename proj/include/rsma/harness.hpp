#ifndef RSMA_HARNESS_HPP
#define RSMA_HARNESS_HPP

#include "rsma/config.hpp"
#include "rsma/csv.hpp"

#include <string>
#include <vector>

namespace rsma {

struct ExperimentResult {
  std::string parameter;
  std::vector<double> values;
  std::vector<Scheme> schemes;
  // per_trial[value][scheme][trial], network ENST
  std::vector<std::vector<std::vector<double>>> per_trial;
  ResultTable table;

  const std::vector<double>& samples(Scheme s, std::size_t value_index) const;
  double mean(Scheme s, std::size_t value_index) const;
};

// Network ENST of every requested scheme on one scenario; RSMA and its
// eve-SIC re-evaluation share one optimization.
std::vector<double> evaluate_schemes(const Scenario& s, const std::vector<Scheme>& schemes, const OutageSpec& spec,
                                     double total_power, const SolverConfig& solver);

// Without a sweep (argument or config) a single point at the configured power.
ExperimentResult run_experiment(const ScenarioConfig& config, const SweepSpec* sweep = nullptr);

// Per-iteration inner-loop traces for trial 0 of every sweep value, as CSV.
std::string convergence_csv(const ScenarioConfig& config, const SweepSpec* sweep = nullptr);

struct ValidationRow {
  std::string check;  // cop or sop
  int scenario = 0;
  std::string quantity;
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  std::string verdict;  // pass, fail, inconclusive
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  double max_abs_z = 0.0;

  bool ok() const { return failed == 0; }
  std::string to_csv() const;
  std::string summary() const;
};

struct ValidateOptions {
  // Negative control: COP evaluated with the un-normalized threshold.
  bool corrupt_cop = false;
  // Diagnostics: independent Monte-Carlo streams, a single scenario.
  std::uint64_t stream_salt = 0;
  int only_scenario = -1;
};

ValidationReport validate_closed_forms(const ScenarioConfig& config, const ValidateOptions& options = {});

std::string verdict_for(double closed_form, const McEstimate& mc, double resolution, double* z = nullptr);

}  // namespace rsma

#endif  // RSMA_HARNESS_HPP
