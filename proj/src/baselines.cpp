#include "rsma/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rsma {

std::vector<BaselineKind> all_baselines() {
  return {BaselineKind::TDMA, BaselineKind::PD_NOMA, BaselineKind::RSMA_perfect_CSIT, BaselineKind::RSMA_eve_SIC};
}

std::vector<Scheme> all_schemes() {
  return {Scheme::RSMA, Scheme::TDMA, Scheme::PD_NOMA, Scheme::RSMA_perfect_CSIT, Scheme::RSMA_eve_SIC};
}

Scheme scheme_of(BaselineKind k) {
  switch (k) {
    case BaselineKind::TDMA: return Scheme::TDMA;
    case BaselineKind::PD_NOMA: return Scheme::PD_NOMA;
    case BaselineKind::RSMA_perfect_CSIT: return Scheme::RSMA_perfect_CSIT;
    case BaselineKind::RSMA_eve_SIC: return Scheme::RSMA_eve_SIC;
  }
  return Scheme::RSMA;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::RSMA: return "RSMA";
    case Scheme::TDMA: return "TDMA";
    case Scheme::PD_NOMA: return "PD-NOMA";
    case Scheme::RSMA_perfect_CSIT: return "RSMA-perfect-CSIT";
    case Scheme::RSMA_eve_SIC: return "RSMA-eve-SIC";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : all_schemes())
    if (to_string(s) == name) return s;
  throw DomainError("unknown scheme '" + name + "'");
}

double tdma_rate(double power, double gain, int cluster_users, double sigma_sq) {
  if (cluster_users < 1) throw DomainError("tdma_rate: cluster has no users");
  if (!(power > 0.0)) return 0.0;
  return std::log2(1.0 + power * gain / sigma_sq) / cluster_users;
}

double tdma_enst(const ClusterLink& link, const UavObservation& obs, int cluster) {
  (void)cluster;
  const int K = link.users;
  if (K == 0) return 0.0;
  const double alpha = 1.0 / K;
  double worst = std::numeric_limits<double>::infinity();
  const double log_eps = std::log(1.0 / link.spec.eps_sop);
  std::vector<double> C(K);
  for (int k = 0; k < K; ++k) C[k] = tdma_rate(link.budget[k], obs.gain[k], K, link.spec.sigma_m_sq);
  if (link.eves() == 0) return std::accumulate(C.begin(), C.end(), 0.0);
  for (int j = 0; j < link.eves(); ++j) {
    double s = 0.0;
    for (int k = 0; k < K; ++k) {
      const double kappa = log_eps * link.budget[k] * link.eve_pl[j][k] * link.eve_lambda[j] / link.spec.sigma_e_sq;
      s += std::max(C[k] - alpha * std::log2(1.0 + kappa), 0.0);
    }
    worst = std::min(worst, s);
  }
  return worst;
}

DecodingOrder pd_noma_order(const std::vector<double>& gain) {
  std::vector<int> users(gain.size());
  std::iota(users.begin(), users.end(), 0);
  std::stable_sort(users.begin(), users.end(), [&](int a, int b) { return gain[a] > gain[b]; });
  return DecodingOrder::by_user_rank(users, 1);
}

AllocationSolution pd_noma_solution(const ClusterLink& link, const UavObservation& obs, int cluster,
                                    const SolverConfig& config, SolverReport* report) {
  (void)cluster;
  if (link.parts != 1) throw DomainError("pd_noma_solution: link must carry one message per user");
  const std::vector<DecodingOrder> orders{pd_noma_order(obs.gain)};
  return search_decoding_orders(link, config, report, nullptr, &orders);
}

std::vector<int> eve_sic_interferers(const DecodingOrder& order, int msg) { return order.after(msg); }

AllocationSolution eve_sic_variant(const ClusterLink& link, const AllocationSolution& sol) {
  AllocationSolution out = sol;
  for (int j = 0; j < link.eves(); ++j)
    for (int q = 0; q < link.messages(); ++q) {
      const auto rest = eve_sic_interferers(sol.order, q);
      out.D[j][q] = std::max(sol.D[j][q], redundancy_bound(link, j, q, sol.p, &rest));
    }
  out.objective = enst(out.r, out.cop, out.D);
  return out;
}

SchemeResult evaluate_scheme(const Scenario& s, Scheme scheme, const OutageSpec& spec, double total_power,
                             const SolverConfig& config) {
  SchemeResult res;
  const int M = s.plan.clusters();
  res.cluster_enst.assign(M, 0.0);
  res.solutions.resize(M);
  for (int m = 0; m < M; ++m) {
    if (s.plan.members[m].empty()) continue;
    double v = 0.0;
    switch (scheme) {
      case Scheme::RSMA: {
        const auto link = make_cluster_link(s, m, spec, total_power, 2);
        res.solutions[m] = search_decoding_orders(link, config);
        v = res.solutions[m].objective;
        break;
      }
      case Scheme::RSMA_eve_SIC: {
        const auto link = make_cluster_link(s, m, spec, total_power, 2);
        res.solutions[m] = eve_sic_variant(link, search_decoding_orders(link, config));
        v = res.solutions[m].objective;
        break;
      }
      case Scheme::RSMA_perfect_CSIT: {
        const auto link = make_cluster_link(s, m, spec, total_power, 2, true);
        res.solutions[m] = search_decoding_orders(link, config);
        v = res.solutions[m].objective;
        break;
      }
      case Scheme::PD_NOMA: {
        const auto link = make_cluster_link(s, m, spec, total_power, 1);
        res.solutions[m] = pd_noma_solution(link, observe_uav(s, m, total_power), m, config);
        v = res.solutions[m].objective;
        break;
      }
      case Scheme::TDMA: {
        const auto link = make_cluster_link(s, m, spec, total_power, 1);
        v = tdma_enst(link, observe_uav(s, m, total_power), m);
        break;
      }
    }
    res.cluster_enst[m] = v;
    res.enst += v;
  }
  return res;
}

}  // namespace rsma
