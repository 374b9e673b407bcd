#include "rsma/surrogates.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rsma;

TEST(Surrogates, TightAtExpansionPoint) {
  RngStream r(21, 0);
  for (int i = 0; i < 100; ++i) {
    const double p = 0.01 + 10 * r.uniform(), rho = 0.01 + 10 * r.uniform();
    const double D = 8 * r.uniform(), zeta = 0.01 + 5 * r.uniform(), nu = 1e-3 + 50 * r.uniform();
    EXPECT_NEAR(surrogate_Theta(p, rho, p, rho), p * rho, 1e-12 * std::max(1.0, p * rho));
    EXPECT_NEAR(surrogate_Gamma(D, D), std::exp2(D), 1e-12 * std::exp2(D));
    EXPECT_NEAR(surrogate_Lambda(zeta, zeta), std::log(zeta), 1e-12);
    EXPECT_NEAR(surrogate_W0_linearization(nu, nu), lambert_w0(nu), 1e-12);
    EXPECT_NEAR(surrogate_Psi(nu, p, nu, p, 2), nu * std::pow(p, 4), 1e-12 * nu * std::pow(p, 4));
  }
}

TEST(Surrogates, BoundDirections) {
  RngStream r(22, 0);
  for (int i = 0; i < 20; ++i) {
    const double pt = 0.1 + 5 * r.uniform(), rt = 0.1 + 5 * r.uniform();
    const double Dt = 6 * r.uniform(), zt = 0.1 + 3 * r.uniform(), nt = 0.01 + 20 * r.uniform();
    for (int a = 0; a < 30; ++a) {
      const double p = 10 * r.uniform(), rho = 10 * r.uniform();
      EXPECT_GE(surrogate_Theta(p, rho, pt, rt), p * rho - 1e-12);
      const double D = 10 * r.uniform();
      EXPECT_LE(surrogate_Gamma(D, Dt), std::exp2(D) + 1e-12);
      const double z = 0.01 + 5 * r.uniform();
      EXPECT_GE(surrogate_Lambda(z, zt), std::log(z) - 1e-12);
      const double nu = 40 * r.uniform();
      EXPECT_GE(surrogate_W0_linearization(nu, nt), lambert_w0(nu) - 1e-12);
    }
  }
}

TEST(Surrogates, GradientMatchesAtExpansion) {
  const double pt = 1.3, rt = 0.7, h = 1e-6;
  const double dp = (surrogate_Theta(pt + h, rt, pt, rt) - surrogate_Theta(pt - h, rt, pt, rt)) / (2 * h);
  EXPECT_NEAR(dp, rt, 1e-8);
  const double nt = 3.0;
  const double dw = (surrogate_W0_linearization(nt + h, nt) - surrogate_W0_linearization(nt - h, nt)) / (2 * h);
  EXPECT_NEAR(dw, (lambert_w0(nt + h) - lambert_w0(nt - h)) / (2 * h), 1e-7);
}

TEST(Surrogates, DomainErrors) {
  EXPECT_THROW(surrogate_Lambda(1.0, 0.0), DomainError);
  EXPECT_THROW(surrogate_W0_linearization(1.0, 0.0), DomainError);
  EXPECT_THROW(surrogate_Psi(1.0, 1.0, 1.0, 0.0, 2), DomainError);
}
