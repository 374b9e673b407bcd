#ifndef RSMA_SURROGATES_HPP
#define RSMA_SURROGATES_HPP

#include "rsma/math_kernel.hpp"

#include <cmath>

namespace rsma {

// Convex upper bound of p * rho, tight at (p_t, rho_t).
template <typename T>
T surrogate_Theta(T p, T rho, T p_t, T rho_t) {
  const T d = p_t - rho_t;
  return T(0.25) * (p + rho) * (p + rho) + T(0.25) * d * d - T(0.5) * d * (p - rho);
}

// Tangent of 2^D at D_t; lower bound of 2^D.
template <typename T>
T surrogate_Gamma(T D, T D_t) {
  return std::exp2(D_t) * (T(1) + T(M_LN2) * (D - D_t));
}

// Tangent of log(zeta) at zeta_t; upper bound of log(zeta).
template <typename T>
T surrogate_Lambda(T zeta, T zeta_t) {
  if (!(zeta_t > T(0))) throw DomainError("surrogate_Lambda: expansion point must be positive");
  return std::log(zeta_t) + (zeta - zeta_t) / zeta_t;
}

// First-order expansion of nu * p^{2K} at (nu_t, p_t).
template <typename T>
T surrogate_Psi(T nu, T p, T nu_t, T p_t, int K) {
  if (!(p_t > T(0))) throw DomainError("surrogate_Psi: expansion point must be positive");
  const T e = T(2 * K);
  const T pe1 = std::pow(p_t, e - T(1));
  return nu_t * pe1 * p_t + pe1 * (p_t * (nu - nu_t) + e * nu_t * (p - p_t));
}

// Tangent of W0 at nu_t; upper bound of W0 by concavity.
template <typename T>
T surrogate_W0_linearization(T nu, T nu_t) {
  if (!(nu_t > T(0))) throw DomainError("surrogate_W0_linearization: expansion point must be positive");
  const T w = lambert_w0(nu_t);
  return w + w / (nu_t * (T(1) + w)) * (nu - nu_t);
}

}  // namespace rsma

#endif  // RSMA_SURROGATES_HPP
