#include "rsma/outage_analytics.hpp"
#include "rsma/parallel.hpp"

namespace rsma {

namespace {

constexpr long long kChunk = 1 << 15;
constexpr std::uint64_t kChunkTag = 0x6d63;

template <typename Trial>
McEstimate run_mc(long long trials, const RngStream& rng, int threads, Trial trial) {
  if (trials < 1) throw DomainError("Monte-Carlo: trials must be >= 1");
  const long long chunks = (trials + kChunk - 1) / kChunk;
  std::vector<long long> hits(static_cast<std::size_t>(chunks), 0);
  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    RngStream cr = rng.substream(kChunkTag, c);
    const long long begin = static_cast<long long>(c) * kChunk;
    const long long end = std::min(trials, begin + kChunk);
    long long h = 0;
    for (long long t = begin; t < end; ++t)
      if (trial(cr)) ++h;
    hits[c] = h;
  });
  long long total = 0;
  for (long long h : hits) total += h;
  McEstimate e;
  e.trials = trials;
  e.estimate = static_cast<double>(total) / static_cast<double>(trials);
  e.standard_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
  return e;
}

// Beta(1, N_t-1) x ChiSquare(2 N_t)
double target_gain(int nt, RngStream& rng) {
  return sample_beta(1.0, nt - 1.0, rng) * sample_chi_squared(2.0 * nt, rng);
}

// Beta(1, N_t-2) x Gamma(N_t-1, 1); scaled by the interferer mean outside
double leakage_gain(int nt, RngStream& rng) {
  const double g = sample_gamma(nt - 1.0, 1.0, rng);
  return nt > 2 ? g * sample_beta(1.0, nt - 2.0, rng) : g;
}

std::vector<int> eve_interferers(int msg, const std::vector<double>& p, const std::vector<int>* subset) {
  std::vector<int> out;
  if (subset) {
    for (int q : *subset)
      if (q != msg && p[q] > 0.0) out.push_back(q);
  } else {
    for (int q = 0; q < static_cast<int>(p.size()); ++q)
      if (q != msg && p[q] > 0.0) out.push_back(q);
  }
  return out;
}

}  // namespace

McEstimate estimate_cop_mc(const ClusterLink& link, const DecodingOrder& order, int msg, double r,
                           const std::vector<double>& p, long long trials, const RngStream& rng,
                           int threads) {
  const double beta = std::exp2(r) - 1.0;
  const int nt = link.spec.antennas;
  const double sig = link.spec.sigma_m_sq;
  std::vector<int> iui;
  for (int q : order.after(msg))
    if (p[q] > 0.0) iui.push_back(q);
  const double target = p[msg] * link.pl_of(msg);
  return run_mc(trials, rng, threads, [&](RngStream& g) {
    const double signal = target * target_gain(nt, g);
    double interference = sig;
    for (int q : iui) interference += p[q] * link.pl_of(q) * target_gain(nt, g);
    for (double y : link.ici_mean) interference += y * leakage_gain(nt, g);
    return r > 0.0 && signal < beta * interference;
  });
}

McEstimate estimate_sop_mc(const ClusterLink& link, int j, int msg, double D, const std::vector<double>& p,
                           long long trials, const RngStream& rng, int threads,
                           const std::vector<int>* interferers) {
  const double kappa = std::exp2(D) - 1.0;
  const double lam = link.eve_lambda[j];
  const double sig = link.spec.sigma_e_sq;
  const auto others = eve_interferers(msg, p, interferers);
  const double target = p[msg] * link.eve_pl_of(j, msg);
  return run_mc(trials, rng, threads, [&](RngStream& g) {
    const double signal = target * std::norm(sample_eve_gains(lam, 1, g)(0));
    double interference = sig;
    for (int q : others) interference += p[q] * link.eve_pl_of(j, q) * std::norm(sample_eve_gains(lam, 1, g)(0));
    return signal > 0.0 && signal >= kappa * interference;
  });
}

McEstimate estimate_cop_structural(const ClusterLink& link, const DecodingOrder& order, int msg, double r,
                                   const std::vector<double>& p, long long trials, const RngStream& rng,
                                   int threads) {
  const double beta = std::exp2(r) - 1.0;
  const int nt = link.spec.antennas;
  const double sig = link.spec.sigma_m_sq;
  const auto iui = order.after(msg);
  const int parts = link.parts;
  return run_mc(trials, rng, threads, [&](RngStream& g) {
    std::vector<double> gain(link.users);
    for (int k = 0; k < link.users; ++k) {
      // |w^H f|^2 for unit w and f ~ CN(0, I); the first coordinate by rotation invariance
      const CVectorXd f = sample_complex_gaussian_vector<double>(nt, g);
      gain[k] = link.pl[k] * std::norm(f(0));
    }
    const double signal = p[msg] * gain[msg / parts];
    double interference = sig;
    for (int q : iui) interference += p[q] * gain[q / parts];
    for (double y : link.ici_mean) interference += y * leakage_gain(nt, g);
    return r > 0.0 && signal < beta * interference;
  });
}

McEstimate estimate_sop_structural(const ClusterLink& link, int j, int msg, double D,
                                   const std::vector<double>& p, long long trials, const RngStream& rng,
                                   int threads) {
  const double kappa = std::exp2(D) - 1.0;
  const double sig = link.spec.sigma_e_sq;
  const int ne = link.eve_antennas;
  const int parts = link.parts;
  return run_mc(trials, rng, threads, [&](RngStream& g) {
    CMatrixXd Q(ne, link.users);
    for (int k = 0; k < link.users; ++k) Q.col(k) = sample_complex_gaussian_vector<double>(ne, g);
    const auto ec = eve_effective_channel<double>(Q);
    std::vector<double> gain(link.users);
    for (int k = 0; k < link.users; ++k) gain[k] = link.eve_pl[j][k] * std::norm(ec.g(k));
    const double mu = sinr_eve(msg, p, gain, parts, sig);
    return p[msg] > 0.0 && mu >= kappa;
  });
}

}  // namespace rsma
