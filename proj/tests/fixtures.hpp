#ifndef RSMA_TEST_FIXTURES_HPP
#define RSMA_TEST_FIXTURES_HPP

#include "rsma/outage_analytics.hpp"

namespace rsma::testing {

// Hand-built two-user cluster with one interfering user and two eves.
inline ClusterLink small_link(int users = 2, int eves = 2, int parts = 2) {
  ClusterLink l;
  l.users = users;
  l.parts = parts;
  for (int k = 0; k < users; ++k) {
    l.pl.push_back(1e-7 * (1.0 + 0.7 * k));
    l.budget.push_back(5e8);
  }
  l.ici_mean = {5e8 * 3e-8 * 0.7937};
  l.eve_pl.assign(eves, {});
  for (int j = 0; j < eves; ++j) {
    for (int k = 0; k < users; ++k) l.eve_pl[j].push_back(2e-9 * (1.0 + k + 0.5 * j));
    l.eve_lambda.push_back(2.0 + j);
  }
  l.eve_antennas = 2;
  l.spec.antennas = 4;
  l.spec.feedback_bits = 1;
  return l;
}

inline std::vector<double> half_split(const ClusterLink& l) {
  std::vector<double> p;
  for (int q = 0; q < l.messages(); ++q) p.push_back(l.budget[l.user_of(q)] / l.parts);
  return p;
}

}  // namespace rsma::testing

#endif  // RSMA_TEST_FIXTURES_HPP
