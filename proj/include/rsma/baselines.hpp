#ifndef RSMA_BASELINES_HPP
#define RSMA_BASELINES_HPP

#include "rsma/optimizer.hpp"

#include <string>
#include <vector>

namespace rsma {

enum class BaselineKind { TDMA, PD_NOMA, RSMA_perfect_CSIT, RSMA_eve_SIC };

// Everything the harness can run; RSMA is the proposed scheme.
enum class Scheme { RSMA, TDMA, PD_NOMA, RSMA_perfect_CSIT, RSMA_eve_SIC };

std::vector<BaselineKind> all_baselines();
std::vector<Scheme> all_schemes();
Scheme scheme_of(BaselineKind k);
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

// alpha log2(1 + p gain / sigma^2) with alpha = 1/K; gain = PL |w^H f|^2
double tdma_rate(double power, double gain, int cluster_users, double sigma_sq);

// sum_k alpha [log2(1 + P_k gain_k / sigma^2) - D_k]^+, worst eve; D_k is the
// interference-free redundancy bound at full power. COP is zero since the
// rate is matched to the realized gain.
double tdma_enst(const ClusterLink& link, const UavObservation& obs, int cluster);

// Descending gain, ties by user index.
DecodingOrder pd_noma_order(const std::vector<double>& gain);

// link must be built with parts == 1
AllocationSolution pd_noma_solution(const ClusterLink& link, const UavObservation& obs, int cluster,
                                    const SolverConfig& config, SolverReport* report = nullptr);

// The eve cancels everything decoded before msg in the given order.
std::vector<int> eve_sic_interferers(const DecodingOrder& order, int msg);

// Re-evaluates a solution against an eve with SIC: D' = max(D, bound over the
// remaining interferers). ENST can only drop.
AllocationSolution eve_sic_variant(const ClusterLink& link, const AllocationSolution& sol);

struct SchemeResult {
  double enst = 0.0;  // summed over clusters
  std::vector<double> cluster_enst;
  std::vector<AllocationSolution> solutions;  // empty entries for TDMA
};

SchemeResult evaluate_scheme(const Scenario& s, Scheme scheme, const OutageSpec& spec, double total_power,
                             const SolverConfig& config);

}  // namespace rsma

#endif  // RSMA_BASELINES_HPP
