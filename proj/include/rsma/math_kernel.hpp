#ifndef RSMA_MATH_KERNEL_HPP
#define RSMA_MATH_KERNEL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace rsma {

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using CVectorXd = CVector<double>;
using CMatrixXd = CMatrix<double>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

std::uint64_t splitmix64(std::uint64_t x);

// Reproducible random stream. The pair (seed, stream_id) fully determines the
// sequence; children are derived by hashing so that sibling streams never
// share an engine state.
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  RngStream substream(std::uint64_t tag, std::uint64_t index = 0) const;

  engine_type& engine() { return engine_; }
  double uniform();
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  engine_type engine_;
};

// Principal branch of the Lambert W function.
template <typename T>
T lambert_w0(T x) {
  using std::exp;
  using std::log;
  using std::sqrt;
  const T inv_e = T(1) / T(M_E);
  const T branch_tol = T(1e-12);
  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  if (x < -inv_e - branch_tol) throw DomainError("lambert_w0: argument below -1/e");
  if (x <= -inv_e) return T(-1);
  if (x == T(0)) return T(0);
  if (std::isinf(x)) return x;

  T w;
  const T q = T(2) * (T(M_E) * x + T(1));
  if (q < T(0.5)) {
    const T p = sqrt(std::max(q, T(0)));
    w = T(-1) + p - p * p / T(3) + T(11) / T(72) * p * p * p;
  } else if (x < T(3)) {
    w = log(T(1) + x) * (T(1) - log(T(1) + log(T(1) + x)) / (T(2) + log(T(1) + x)));
  } else {
    const T l1 = log(x);
    const T l2 = log(l1);
    w = l1 - l2 + l2 / l1;
  }

  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const T ew = exp(w);
    const T f = w * ew - x;
    const T wp1 = w + T(1);
    if (wp1 == T(0)) break;
    const T denom = ew * wp1 - (w + T(2)) * f / (T(2) * wp1);
    if (denom == T(0) || !std::isfinite(denom)) break;
    const T step = f / denom;
    w -= step;
    if (std::abs(step) <= T(4) * std::numeric_limits<T>::epsilon() * (T(1) + std::abs(w))) {
      converged = true;
      break;
    }
  }

  auto residual = [x](T v) { return std::abs(v * exp(v) - x) / std::max(T(1), std::abs(x)); };
  if (converged && w >= T(-1) && residual(w) <= T(1e-10)) return w;

  // bisection on the monotone map w -> w e^w over [-1, hi]
  T lo = T(-1);
  T hi = std::max(T(1), log(std::max(x, T(1))) + T(1));
  for (int it = 0; it < 400; ++it) {
    const T mid = T(0.5) * (lo + hi);
    if (mid * exp(mid) < x) lo = mid; else hi = mid;
    if (hi - lo <= std::numeric_limits<T>::epsilon() * (T(1) + std::abs(mid))) break;
  }
  return T(0.5) * (lo + hi);
}

// W0(exp(L)) without forming exp(L); valid for any real L.
template <typename T>
T lambert_w0_of_exp(T L) {
  using std::log;
  if (L < T(600)) return lambert_w0(std::exp(L));
  T w = L - log(L);
  for (int it = 0; it < 50; ++it) {
    const T f = w + log(w) - L;
    const T step = f / (T(1) + T(1) / w);
    w -= step;
    if (std::abs(step) <= T(4) * std::numeric_limits<T>::epsilon() * w) break;
  }
  return w;
}

template <typename Scalar = double>
CVector<Scalar> sample_complex_gaussian_vector(int n, RngStream& rng) {
  if (n < 1) throw DomainError("sample_complex_gaussian_vector: n must be >= 1");
  std::normal_distribution<Scalar> nd(Scalar(0), std::sqrt(Scalar(0.5)));
  CVector<Scalar> v(n);
  for (int i = 0; i < n; ++i) {
    const Scalar re = nd(rng.engine());
    const Scalar im = nd(rng.engine());
    v(i) = std::complex<Scalar>(re, im);
  }
  return v;
}

template <typename Scalar = double>
CVector<Scalar> sample_unit_vector(int n, RngStream& rng) {
  CVector<Scalar> v;
  do {
    v = sample_complex_gaussian_vector<Scalar>(n, rng);
  } while (v.norm() == Scalar(0));
  return v / v.norm();
}

// Exponential with density rate * exp(-rate * x).
double sample_exp(double rate, RngStream& rng);
double sample_gamma(double shape, double scale, RngStream& rng);
double sample_beta(double a, double b, RngStream& rng);
double sample_chi_squared(double dof, RngStream& rng);

double exp_cdf(double x, double rate);
// Beta(1, b), closed form.
double beta1_cdf(double x, double b);
// Gamma with integer shape.
double erlang_cdf(double x, int shape, double scale);

template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace rsma

#endif  // RSMA_MATH_KERNEL_HPP
