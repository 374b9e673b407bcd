#ifndef RSMA_OPTIMIZER_HPP
#define RSMA_OPTIMIZER_HPP

#include "rsma/barrier_solver.hpp"
#include "rsma/outage_analytics.hpp"
#include "rsma/surrogates.hpp"

#include <string>
#include <vector>

namespace rsma {

// closed_form: the Lambert-W rate update (bound direction as derived).
// cop_target: the largest rate whose exact COP meets eps_cop; the inner
// loop then drops the bound-side C1 row and audits the exact COP instead.
enum class RateRule { closed_form, cop_target };

std::string to_string(RateRule rule);
RateRule rate_rule_from_string(const std::string& name);

struct SolverConfig {
  int T_max = 20;
  int Q_max = 20;
  double delta_I = 1e-2;
  double epsilon = 1e-3;
  double subproblem_tol = 1e-9;
  int max_step_halvings = 5;
  RateRule rate_rule = RateRule::closed_form;

  void validate() const;
};

// Auxiliary chain of one (eve, message) pair; expansion point of its surrogates.
struct ChainState {
  int eve = 0;
  int msg = 0;
  int others = 0;
  double D = 0.0;
  double theta = 0.0;
  double rho = 0.0;
  double nu = 0.0;
  double vartheta = 0.0;
};

struct SpcaState {
  std::vector<double> p;
  std::vector<ChainState> chains;  // secured pairs only
  int iteration = 0;
  std::vector<double> trace;
};

struct SubproblemResult {
  SpcaState next;
  double surrogate_objective = 0.0;  // F_j at the returned point
  double kkt_residual = 0.0;
  int newton_iterations = 0;
  bool converged = false;
};

struct AllocationSolution {
  DecodingOrder order;
  std::vector<double> p;
  std::vector<double> r;
  std::vector<std::vector<double>> D;        // [j][msg]
  std::vector<std::vector<char>> secured;    // [j][msg]
  std::vector<double> cop;
  double objective = 0.0;            // ENST
  double surrogate_objective = 0.0;  // F_j of the selected eve
  int eve = -1;
};

struct FeasibilityAudit {
  bool budget = true;
  bool rate_dominance = true;
  bool sop = true;
  bool cop_side = true;
  bool cop = true;  // exact COP <= eps_cop, only audited under RateRule::cop_target
  bool ok() const { return budget && rate_dominance && sop && cop_side && cop; }
};

struct InnerTrace {
  int outer = 0;
  int eve = -1;
  std::vector<double> values;
  int rejected_steps = 0;
  bool audit_passed = true;
  // accepted power iterates (start point first) with the loop's fixed data
  std::vector<std::vector<double>> iterates;
  std::vector<double> rates;
  std::vector<std::vector<char>> secured;
};

struct SolverReport {
  int outer_iterations = 0;
  bool outer_converged = false;
  std::vector<InnerTrace> inner;
  std::vector<std::vector<double>> rate_trace;
  std::vector<double> enst_trace;
  double kkt_residual = 0.0;
  double wall_time = 0.0;
  bool audit_passed = true;
  std::size_t orders_searched = 1;

  bool inner_monotone() const;
  int max_inner_iterations() const;
  std::string to_text() const;
};

// F_j with D at the Lambert-W bound; -inf if a secured pair is not covered.
double objective_F(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r, int eve,
                   const std::vector<double>& p, const std::vector<std::vector<char>>& secured);

// Solution at (r, p) with D at the bound, COP and ENST filled in.
AllocationSolution evaluate_solution(const ClusterLink& link, const DecodingOrder& order,
                                     const std::vector<double>& r, const std::vector<double>& p);

FeasibilityAudit audit_solution(const ClusterLink& link, const AllocationSolution& sol,
                                RateRule rule = RateRule::closed_form);

std::vector<double> rate_update(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& p,
                                RateRule rule = RateRule::closed_form);

// Expansion point at p with every coverable (eve, message) chain tightened.
SpcaState initial_state(const ClusterLink& link, const std::vector<double>& p, const std::vector<double>& r);

SubproblemResult solve_subproblem(const ClusterLink& link, const DecodingOrder& order,
                                  const std::vector<double>& r, int eve, const SpcaState& state,
                                  const SolverConfig& config);

struct InnerResult {
  SpcaState state;
  double objective = 0.0;
  double kkt_residual = 0.0;
  InnerTrace trace;
};

InnerResult inner_loop(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r, int eve,
                       const std::vector<double>& p_init, const SolverConfig& config);

AllocationSolution outer_loop(const ClusterLink& link, const DecodingOrder& order, const SolverConfig& config,
                              SolverReport* report = nullptr);

// Exhaustive over all (2K)!/2^K orders when parts == 2; K <= 4.
AllocationSolution search_decoding_orders(const ClusterLink& link, const SolverConfig& config,
                                          SolverReport* report = nullptr,
                                          std::vector<AllocationSolution>* per_order = nullptr,
                                          const std::vector<DecodingOrder>* orders = nullptr);

// Stationarity residual of the subproblem expanded at state, evaluated there.
double kkt_residual(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r, int eve,
                    const SpcaState& state, RateRule rule = RateRule::closed_form);

}  // namespace rsma

#endif  // RSMA_OPTIMIZER_HPP
