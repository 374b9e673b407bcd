#include "rsma/outage_analytics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rsma {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double threshold(double rate_bits) { return std::expm1(rate_bits * kLn2); }

std::vector<int> active_others(int msg, const std::vector<double>& p, const std::vector<int>* subset) {
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

std::vector<int> active_after(const DecodingOrder& order, int msg, const std::vector<double>& p) {
  std::vector<int> out;
  for (int q : order.after(msg))
    if (p[q] > 0.0) out.push_back(q);
  return out;
}

}  // namespace

void OutageSpec::validate() const {
  if (!(eps_cop > 0.0 && eps_cop < 1.0)) throw DomainError("eps_cop must lie in (0,1)");
  if (!(eps_sop > 0.0 && eps_sop < 1.0)) throw DomainError("eps_sop must lie in (0,1)");
  if (!(sigma_m_sq > 0.0) || !(sigma_e_sq > 0.0)) throw DomainError("noise powers must be positive");
  if (feedback_bits < 0) throw DomainError("feedback_bits must be >= 0");
  if (antennas < 2) throw DomainError("antennas must be >= 2");
}

double OutageSpec::ici_scale() const {
  return std::exp2(-static_cast<double>(feedback_bits) / (antennas - 1));
}

DecodingOrder::DecodingOrder(int users, int parts, std::vector<int> sequence)
    : users_(users), parts_(parts), sequence_(std::move(sequence)) {
  if (users < 1 || parts < 1 || parts > 2) throw DomainError("DecodingOrder: bad shape");
  const int n = users * parts;
  if (static_cast<int>(sequence_.size()) != n) throw DomainError("DecodingOrder: wrong length");
  position_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const int q = sequence_[i];
    if (q < 0 || q >= n || position_[q] != -1) throw DomainError("DecodingOrder: not a permutation");
    position_[q] = i;
  }
  if (parts == 2)
    for (int k = 0; k < users; ++k)
      if (position_[2 * k] > position_[2 * k + 1])
        throw DomainError("DecodingOrder: part 1 must precede part 2 of the same user");
}

std::vector<DecodingOrder> DecodingOrder::enumerate(int users, int parts) {
  std::vector<int> seq(users * parts);
  std::iota(seq.begin(), seq.end(), 0);
  std::vector<DecodingOrder> out;
  do {
    bool ok = true;
    if (parts == 2) {
      std::vector<int> pos(seq.size());
      for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = static_cast<int>(i);
      for (int k = 0; k < users && ok; ++k) ok = pos[2 * k] < pos[2 * k + 1];
    }
    if (ok) out.emplace_back(users, parts, seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

std::size_t DecodingOrder::count(int users, int parts) {
  std::size_t num = 1;
  for (int i = 2; i <= users * parts; ++i) num *= static_cast<std::size_t>(i);
  if (parts == 2) num >>= users;
  return num;
}

DecodingOrder DecodingOrder::by_user_rank(const std::vector<int>& users_first_to_last, int parts) {
  std::vector<int> seq;
  for (int n = 0; n < parts; ++n)
    for (int k : users_first_to_last) seq.push_back(k * parts + n);
  return DecodingOrder(static_cast<int>(users_first_to_last.size()), parts, seq);
}

std::vector<int> DecodingOrder::after(int msg) const {
  return std::vector<int>(sequence_.begin() + position_[msg] + 1, sequence_.end());
}

std::string DecodingOrder::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (i) os << ' ';
    os << 'u' << sequence_[i] / parts_ << '.' << sequence_[i] % parts_ + 1;
  }
  return os.str();
}

ClusterLink make_cluster_link(const Scenario& s, int m, const OutageSpec& spec, double total_power,
                              int parts, bool null_ici) {
  ClusterLink link;
  const auto& mem = s.plan.members[m];
  link.users = static_cast<int>(mem.size());
  link.parts = parts;
  link.spec = spec;
  link.spec.feedback_bits = s.codebook.feedback_bits;
  link.spec.antennas = s.params.antennas;
  link.spec.validate();
  link.eve_antennas = s.params.eve_antennas;
  const double budget = total_power / std::max(1, s.plan.scheduled_users());
  for (int u : mem) {
    link.pl.push_back(s.pl_uav[u]);
    link.budget.push_back(budget);
  }
  if (!null_ici) {
    const double scale = link.spec.ici_scale();
    for (int i = 0; i < s.plan.clusters(); ++i) {
      if (i == m) continue;
      for (int u : s.plan.members[i]) link.ici_mean.push_back(budget * s.pl_uav[u] * scale);
    }
  }
  const int J = s.geometry.J();
  link.eve_pl.assign(J, {});
  for (int j = 0; j < J; ++j) {
    for (int u : mem) link.eve_pl[j].push_back(s.pl_eve[j][u]);
    link.eve_lambda.push_back(s.plan.eve_lambda_max[m][j]);
  }
  return link;
}

UavObservation observe_uav(const Scenario& s, int m, double total_power) {
  UavObservation obs;
  const auto& w = s.plan.beamformers[m];
  const double budget = total_power / std::max(1, s.plan.scheduled_users());
  for (int u : s.plan.members[m]) obs.gain.push_back(s.pl_uav[u] * std::norm(w.dot(s.channels.f[u])));
  for (int i = 0; i < s.plan.clusters(); ++i) {
    if (i == m) continue;
    for (int u : s.plan.members[i]) {
      const double fn2 = s.channels.f[u].squaredNorm();
      const double sp = std::sin(s.channels.phi[u]);
      obs.ici.push_back(budget * s.pl_uav[u] * fn2 * sp * sp * std::norm(w.dot(s.channels.e[u])));
    }
  }
  return obs;
}

double sinr_uav(const DecodingOrder& order, int msg, const std::vector<double>& p,
                const UavObservation& obs, double sigma_sq) {
  const int parts = order.parts();
  double interference = sigma_sq;
  for (int q : order.after(msg)) interference += p[q] * obs.gain[q / parts];
  for (double y : obs.ici) interference += y;
  const double signal = p[msg] * obs.gain[msg / parts];
  if (signal == 0.0) return 0.0;
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

double sinr_eve(int msg, const std::vector<double>& p, const std::vector<double>& eve_gain, int parts,
                double sigma_sq, const std::vector<int>* interferers) {
  double interference = sigma_sq;
  if (interferers) {
    for (int q : *interferers)
      if (q != msg) interference += p[q] * eve_gain[q / parts];
  } else {
    for (int q = 0; q < static_cast<int>(p.size()); ++q)
      if (q != msg) interference += p[q] * eve_gain[q / parts];
  }
  const double signal = p[msg] * eve_gain[msg / parts];
  if (signal == 0.0) return 0.0;
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

double cop_closed_form(const ClusterLink& link, const DecodingOrder& order, int msg, double r,
                       const std::vector<double>& p) {
  if (r <= 0.0) return 0.0;
  if (!(p[msg] > 0.0)) return 1.0;
  const double bt = threshold(r) / (p[msg] * link.pl_of(msg));
  double log_success = -bt * link.spec.sigma_m_sq / 2.0;
  for (int q : active_after(order, msg, p)) log_success -= std::log1p(p[q] * link.pl_of(q) * bt);
  for (double y : link.ici_mean) log_success -= std::log1p(y * bt / 2.0);
  return std::clamp(-std::expm1(log_success), 0.0, 1.0);
}

double sop_closed_form(const ClusterLink& link, int j, int msg, double D, const std::vector<double>& p,
                       const std::vector<int>* interferers) {
  if (!(p[msg] > 0.0)) return 0.0;
  if (D <= 0.0) return 1.0;
  const double kappa = threshold(D);
  const double own = p[msg] * link.eve_pl_of(j, msg);
  const double eta = 1.0 / (own * link.eve_lambda[j]);
  double log_sop = -eta * kappa * link.spec.sigma_e_sq;
  for (int q : active_others(msg, p, interferers))
    log_sop -= std::log1p(kappa * p[q] * link.eve_pl_of(j, q) / own);
  return std::clamp(std::exp(log_sop), 0.0, 1.0);
}

namespace {

struct BoundTerms {
  int n = 0;
  double own = 0.0;       // p PL_e lambda = 1/eta
  double sum_log_zeta = 0.0;
};

BoundTerms bound_terms(const ClusterLink& link, int j, int msg, const std::vector<double>& p,
                       const std::vector<int>* interferers) {
  BoundTerms t;
  const double lam = link.eve_lambda[j];
  t.own = p[msg] * link.eve_pl_of(j, msg) * lam;
  for (int q : active_others(msg, p, interferers)) {
    t.sum_log_zeta -= std::log(p[q] * link.eve_pl_of(j, q) * lam);
    ++t.n;
  }
  return t;
}

double bound_kappa(const BoundTerms& t, double sigma_sq, double eps) {
  if (t.n == 0) return std::log(1.0 / eps) * t.own / sigma_sq;
  const double n = t.n;
  const double log_arg = std::log(sigma_sq / n) + (t.sum_log_zeta - std::log(eps)) / n;
  return n * t.own / sigma_sq * lambert_w0_of_exp(log_arg);
}

}  // namespace

double redundancy_bound(const ClusterLink& link, int j, int msg, const std::vector<double>& p,
                        const std::vector<int>* interferers) {
  if (!(p[msg] > 0.0)) return 0.0;
  const auto t = bound_terms(link, j, msg, p, interferers);
  const double kappa = bound_kappa(t, link.spec.sigma_e_sq, link.spec.eps_sop);
  return std::log1p(kappa) / kLn2;
}

double redundancy_root_residual(const ClusterLink& link, int j, int msg, const std::vector<double>& p,
                                const std::vector<int>* interferers) {
  const auto t = bound_terms(link, j, msg, p, interferers);
  const double sig = link.spec.sigma_e_sq;
  const double eps = link.spec.eps_sop;
  const double kappa = bound_kappa(t, sig, eps);
  const double eta_kappa = kappa / t.own;
  const double log_psi = -eta_kappa * sig + t.sum_log_zeta - t.n * std::log(eta_kappa);
  return std::abs(std::expm1(log_psi - std::log(eps)));
}

int rate_exponent(const ClusterLink& link, const DecodingOrder& order, int msg) {
  return static_cast<int>(order.after(msg).size() + link.ici_mean.size());
}

namespace {

struct RateTerms {
  int A = 0;
  double log_c = 0.0;  // ln(xi / eps * prod 2/lambda)
};

RateTerms rate_terms(const ClusterLink& link, const DecodingOrder& order, int msg, const std::vector<double>& p) {
  RateTerms t;
  for (double y : link.ici_mean) {
    t.log_c += std::log(2.0 * y);
    ++t.A;
  }
  for (int q : active_after(order, msg, p)) {
    t.log_c += std::log(4.0 * p[q] * link.pl_of(q));
    ++t.A;
  }
  t.log_c -= std::log(link.spec.eps_cop);
  return t;
}

}  // namespace

double optimal_rate(const ClusterLink& link, const DecodingOrder& order, int msg, const std::vector<double>& p) {
  const auto t = rate_terms(link, order, msg, p);
  const double sig = link.spec.sigma_m_sq;
  double beta;
  if (t.A == 0) {
    beta = std::max(0.0, 2.0 / sig * t.log_c);
  } else {
    const double A = t.A;
    beta = 2.0 * A / sig * lambert_w0_of_exp(std::log(sig / (2.0 * A)) + t.log_c / A);
  }
  return std::log1p(beta) / kLn2;
}

double cop_target_rate(const ClusterLink& link, const DecodingOrder& order, int msg, const std::vector<double>& p) {
  if (!(p[msg] > 0.0)) return 0.0;
  const double own = p[msg] * link.pl_of(msg);
  std::vector<double> a;
  for (int q : active_after(order, msg, p)) a.push_back(p[q] * link.pl_of(q));
  for (double y : link.ici_mean) a.push_back(y / 2.0);
  // -ln(1 - COP) as a function of the normalized threshold, increasing from 0
  const auto g = [&](double bt) {
    double v = bt * link.spec.sigma_m_sq / 2.0;
    for (double c : a) v += std::log1p(c * bt);
    return v;
  };
  const double target = -std::log1p(-link.spec.eps_cop);
  double lo = 0.0, hi = 1.0 / own;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw DomainError("cop_target_rate: no bracket");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return std::log1p(lo * own) / kLn2;
}

double rate_equation_residual(const ClusterLink& link, const DecodingOrder& order, int msg,
                              const std::vector<double>& p, double r) {
  const auto t = rate_terms(link, order, msg, p);
  const double beta = threshold(r);
  const double log_lhs = -link.spec.sigma_m_sq * beta / 2.0 - t.A * std::log(beta);
  return std::abs(std::expm1(log_lhs + t.log_c));
}

std::vector<double> enst_per_eve(const std::vector<double>& r, const std::vector<double>& cop,
                                 const std::vector<std::vector<double>>& D) {
  std::vector<double> out;
  for (const auto& Dj : D) {
    double s = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) s += (1.0 - cop[q]) * std::max(r[q] - Dj[q], 0.0);
    out.push_back(s);
  }
  return out;
}

double enst(const std::vector<double>& r, const std::vector<double>& cop,
            const std::vector<std::vector<double>>& D) {
  if (D.empty()) {
    double s = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) s += (1.0 - cop[q]) * std::max(r[q], 0.0);
    return s;
  }
  const auto per = enst_per_eve(r, cop, D);
  return *std::min_element(per.begin(), per.end());
}

}  // namespace rsma
