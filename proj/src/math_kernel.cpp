#include "rsma/math_kernel.hpp"

namespace rsma {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t tag, std::uint64_t index) const {
  const std::uint64_t child = splitmix64(stream_id_ ^ splitmix64(splitmix64(tag) + index));
  return RngStream(seed_, child);
}

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double sample_exp(double rate, RngStream& rng) {
  check_positive(rate, "rate");
  return std::exponential_distribution<double>(rate)(rng.engine());
}

double sample_gamma(double shape, double scale, RngStream& rng) {
  check_positive(shape, "shape");
  check_positive(scale, "scale");
  return std::gamma_distribution<double>(shape, scale)(rng.engine());
}

double sample_beta(double a, double b, RngStream& rng) {
  check_positive(a, "a");
  check_positive(b, "b");
  const double x = std::gamma_distribution<double>(a, 1.0)(rng.engine());
  const double y = std::gamma_distribution<double>(b, 1.0)(rng.engine());
  return x / (x + y);
}

double sample_chi_squared(double dof, RngStream& rng) {
  check_positive(dof, "dof");
  return std::gamma_distribution<double>(0.5 * dof, 2.0)(rng.engine());
}

double exp_cdf(double x, double rate) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); }

double beta1_cdf(double x, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return -std::expm1(b * std::log1p(-x));
}

double erlang_cdf(double x, int shape, double scale) {
  if (x <= 0.0) return 0.0;
  const double z = x / scale;
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i < shape; ++i) {
    term *= z / i;
    sum += term;
  }
  return std::clamp(1.0 - std::exp(-z) * sum, 0.0, 1.0);
}

}  // namespace rsma
