#include "rsma/optimizer.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rsma;
using rsma::testing::half_split;
using rsma::testing::small_link;

TEST(Barrier, LinearProgramOnBox) {
  // min -x - 2y  s.t. x + y <= 1, x, y >= 0  -> (0, 1)
  BarrierProblem p;
  p.n = 2;
  p.c = Eigen::Vector2d(-1, -2);
  p.linear = {{{{0, 1.0}, {1, 1.0}}, -1.0}, {{{0, -1.0}}, 0.0}, {{{1, -1.0}}, 0.0}};
  const auto r = solve_barrier(p, Eigen::Vector2d(0.2, 0.2));
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), 0.0, 1e-7);
  EXPECT_NEAR(r.x(1), 1.0, 1e-7);
  EXPECT_LT(kkt_residual(p, r.x), 1e-6);
}

TEST(Barrier, SmoothObjectiveAndConstraint) {
  // max log(x) + log(y) on the unit disc -> x = y = 1/sqrt(2)
  BarrierProblem p;
  p.n = 2;
  p.c = Eigen::Vector2d::Zero();
  for (int i = 0; i < 2; ++i)
    p.objective.push_back({{i}, [](const double* x, double* g, double* h) {
                             if (!(x[0] > 0)) return HUGE_VAL;
                             if (g) {
                               g[0] = -1 / x[0];
                               h[0] = 1 / (x[0] * x[0]);
                             }
                             return -std::log(x[0]);
                           }});
  p.smooth.push_back({{0, 1}, [](const double* x, double* g, double* h) {
                        if (g) {
                          g[0] = 2 * x[0];
                          g[1] = 2 * x[1];
                          h[0] = h[3] = 2;
                          h[1] = h[2] = 0;
                        }
                        return x[0] * x[0] + x[1] * x[1] - 1;
                      }});
  const auto r = solve_barrier(p, Eigen::Vector2d(0.1, 0.5));
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), M_SQRT1_2, 1e-6);
  EXPECT_NEAR(r.x(1), M_SQRT1_2, 1e-6);
}

TEST(Barrier, RejectsInfeasibleStart) {
  BarrierProblem p;
  p.n = 1;
  p.c = Eigen::VectorXd::Ones(1);
  p.linear = {{{{0, 1.0}}, -1.0}};
  const auto r = solve_barrier(p, Eigen::VectorXd::Constant(1, 2.0));
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.message.empty());
}

TEST(Nnls, MatchesKnownSolution) {
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd b(3);
  b << 1, -1, 0.5;
  const auto x = nnls(A, b);
  EXPECT_GE(x.minCoeff(), 0.0);
  EXPECT_NEAR(x(0), 0.75, 1e-12);
  EXPECT_NEAR(x(1), 0.0, 1e-12);
}

TEST(Spca, InitialStateIsTightAndSecured) {
  const auto l = small_link();
  const auto p = half_split(l);
  const auto o = DecodingOrder::enumerate(2).front();
  const auto r = rate_update(l, o, p);
  const auto st = initial_state(l, p, r);
  for (const auto& c : st.chains) {
    const double bound = redundancy_bound(l, c.eve, c.msg, p);
    EXPECT_GT(c.D, bound);
    EXPECT_NEAR(c.D, bound, 1e-5 * std::max(1.0, bound));
    EXPECT_LT(c.D, r[c.msg]);
  }
}

TEST(Spca, InnerLoopMonotoneAndFeasible) {
  const auto l = small_link();
  SolverConfig cfg;
  for (const auto& o : DecodingOrder::enumerate(2)) {
    SolverReport rep;
    const auto sol = outer_loop(l, o, cfg, &rep);
    EXPECT_TRUE(rep.inner_monotone()) << o.to_string();
    EXPECT_TRUE(rep.audit_passed) << o.to_string();
    EXPECT_LE(rep.max_inner_iterations(), cfg.T_max);
    EXPECT_LE(rep.outer_iterations, cfg.Q_max);
    EXPECT_TRUE(audit_solution(l, sol).ok());
    EXPECT_GE(sol.objective, 0.0);
  }
}

TEST(Spca, CopTargetRuleKeepsExactCop) {
  const auto l = small_link();
  SolverConfig cfg;
  cfg.rate_rule = RateRule::cop_target;
  for (const auto& o : DecodingOrder::enumerate(2)) {
    SolverReport rep;
    const auto sol = outer_loop(l, o, cfg, &rep);
    EXPECT_TRUE(rep.inner_monotone()) << o.to_string();
    EXPECT_TRUE(audit_solution(l, sol, RateRule::cop_target).ok()) << o.to_string();
    for (double c : sol.cop) EXPECT_LE(c, l.spec.eps_cop * (1 + 1e-6));
  }
  EXPECT_EQ(rate_rule_from_string(to_string(RateRule::cop_target)), RateRule::cop_target);
  EXPECT_THROW(rate_rule_from_string("exact"), DomainError);
}

TEST(Spca, SubproblemImprovesSurrogate) {
  const auto l = small_link();
  auto p = half_split(l);
  for (double& v : p) v *= 1 - 1e-6;
  const auto o = DecodingOrder::enumerate(2)[2];
  const auto r = rate_update(l, o, half_split(l));
  const auto st = initial_state(l, p, r);
  SolverConfig cfg;
  const auto sub = solve_subproblem(l, o, r, 0, st, cfg);
  EXPECT_TRUE(sub.converged);
  std::vector<std::vector<char>> sec(l.eves(), std::vector<char>(l.messages(), 0));
  for (const auto& c : st.chains) sec[c.eve][c.msg] = 1;
  EXPECT_GE(objective_F(l, o, r, 0, sub.next.p, sec), objective_F(l, o, r, 0, st.p, sec) - 1e-6);
  EXPECT_LT(sub.kkt_residual, 1e-3);
}

TEST(Spca, KktResidualNeedsFeasiblePoint) {
  const auto l = small_link();
  const auto o = DecodingOrder::enumerate(2)[0];
  auto p = half_split(l);
  const auto r = rate_update(l, o, p);
  auto st = initial_state(l, p, r);
  st.p[0] = 2 * l.budget[0];
  EXPECT_THROW(kkt_residual(l, o, r, 0, st), DomainError);
}

TEST(OrderSearch, ReturnsBestOrder) {
  const auto l = small_link();
  SolverConfig cfg;
  std::vector<AllocationSolution> all;
  SolverReport rep;
  const auto best = search_decoding_orders(l, cfg, &rep, &all);
  ASSERT_EQ(all.size(), 6u);
  EXPECT_EQ(rep.orders_searched, 6u);
  for (const auto& s : all) EXPECT_GE(best.objective, s.objective);
  auto big = l;
  big.users = 5;
  EXPECT_THROW(search_decoding_orders(big, cfg), DomainError);
}

TEST(Evaluate, NoEveMeansPlainThroughput) {
  auto l = small_link(2, 0);
  const auto p = half_split(l);
  const auto o = DecodingOrder::enumerate(2)[0];
  const auto r = rate_update(l, o, p);
  const auto s = evaluate_solution(l, o, r, p);
  double want = 0;
  for (int q = 0; q < 4; ++q) want += (1 - s.cop[q]) * r[q];
  EXPECT_NEAR(s.objective, want, 1e-12);
  const auto sol = outer_loop(l, o, SolverConfig{});
  EXPECT_GE(sol.objective, s.objective);
}

TEST(Config, Validation) {
  SolverConfig c;
  c.T_max = 0;
  EXPECT_THROW(c.validate(), DomainError);
}
