#include "rsma/baselines.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rsma;
using rsma::testing::small_link;

TEST(Tdma, RateFormula) {
  EXPECT_DOUBLE_EQ(tdma_rate(0.0, 1.0, 2, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(tdma_rate(3.0, 1.0, 1, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(tdma_rate(3.0, 1.0, 2, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(tdma_rate(7.0, 2.0, 4, 2.0) * 2, tdma_rate(7.0, 2.0, 2, 2.0));
  EXPECT_THROW(tdma_rate(1.0, 1.0, 0, 1.0), DomainError);
}

TEST(Tdma, EnstUsesInterferenceFreeRedundancy) {
  auto l = small_link(1, 1, 1);
  UavObservation obs;
  obs.gain = {l.pl[0] * 2.0};
  const double C = std::log2(1 + l.budget[0] * obs.gain[0]);
  const double D = std::log2(1 + std::log(10.0) * l.budget[0] * l.eve_pl[0][0] * l.eve_lambda[0]);
  EXPECT_NEAR(tdma_enst(l, obs, 0), std::max(C - D, 0.0), 1e-12);
}

TEST(PdNoma, OrderByGainWithIndexTieBreak) {
  EXPECT_EQ(pd_noma_order({1.0, 3.0, 2.0}).sequence(), (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(pd_noma_order({2.0, 2.0}).sequence(), (std::vector<int>{0, 1}));
}

TEST(PdNoma, SingleUserSolution) {
  auto l = small_link(2, 2, 1);
  UavObservation obs;
  obs.gain = {1.0, 2.0};
  SolverReport rep;
  const auto s = pd_noma_solution(l, obs, 0, SolverConfig{}, &rep);
  EXPECT_EQ(s.order.sequence(), (std::vector<int>{1, 0}));
  EXPECT_EQ(rep.orders_searched, 1u);
  EXPECT_TRUE(audit_solution(l, s).ok());
  EXPECT_THROW(pd_noma_solution(small_link(), obs, 0, SolverConfig{}), DomainError);
}

TEST(EveSic, InterferersAndMonotonicity) {
  const DecodingOrder o(2, 2, {0, 2, 1, 3});
  EXPECT_EQ(eve_sic_interferers(o, 0), (std::vector<int>{2, 1, 3}));
  EXPECT_TRUE(eve_sic_interferers(o, 3).empty());
  const auto l = small_link();
  const auto sol = search_decoding_orders(l, SolverConfig{});
  const auto sic = eve_sic_variant(l, sol);
  EXPECT_LE(sic.objective, sol.objective + 1e-12);
  const int first = sol.order.sequence().front();
  for (int j = 0; j < l.eves(); ++j) EXPECT_EQ(sic.D[j][first], sol.D[j][first]);
}

TEST(Schemes, NamesRoundTrip) {
  for (Scheme s : all_schemes()) EXPECT_EQ(scheme_from_string(to_string(s)), s);
  EXPECT_THROW(scheme_from_string("CDMA"), DomainError);
  EXPECT_EQ(all_baselines().size(), 4u);
}

TEST(Schemes, NetworkEvaluation) {
  const auto s = generate_scenario(ScenarioParams{}, 77, 0);
  OutageSpec spec;
  for (Scheme sc : all_schemes()) {
    const auto r = evaluate_scheme(s, sc, spec, 1e10, SolverConfig{});
    EXPECT_GE(r.enst, 0.0) << to_string(sc);
    double sum = 0;
    for (double v : r.cluster_enst) sum += v;
    EXPECT_NEAR(sum, r.enst, 1e-12);
  }
}
