#ifndef RSMA_OUTAGE_ANALYTICS_HPP
#define RSMA_OUTAGE_ANALYTICS_HPP

#include "rsma/math_kernel.hpp"
#include "rsma/network_model.hpp"

#include <string>
#include <vector>

namespace rsma {

struct OutageSpec {
  double eps_cop = 0.1;
  double eps_sop = 0.1;
  double sigma_m_sq = 1.0;
  double sigma_e_sq = 1.0;
  int feedback_bits = 1;
  int antennas = 4;

  void validate() const;
  // 2^{-B/(N_t-1)}, the mean of the residual quantization gain
  double ici_scale() const;
};

// Messages are numbered user * parts + part; part 0 is always decoded before
// part 1 of the same user.
class DecodingOrder {
 public:
  DecodingOrder() = default;
  DecodingOrder(int users, int parts, std::vector<int> sequence);

  static std::vector<DecodingOrder> enumerate(int users, int parts = 2);
  static std::size_t count(int users, int parts = 2);
  static DecodingOrder by_user_rank(const std::vector<int>& users_first_to_last, int parts);

  int users() const { return users_; }
  int parts() const { return parts_; }
  int messages() const { return users_ * parts_; }
  const std::vector<int>& sequence() const { return sequence_; }
  int position(int msg) const { return position_[msg]; }
  // messages decoded after msg
  std::vector<int> after(int msg) const;
  std::string to_string() const;

 private:
  int users_ = 0;
  int parts_ = 0;
  std::vector<int> sequence_;
  std::vector<int> position_;
};

// Large-scale view of one cluster, all the closed forms need.
struct ClusterLink {
  int users = 0;
  int parts = 2;
  std::vector<double> pl;                   // UAV link path loss per user
  std::vector<double> budget;               // P_{m,k}
  std::vector<double> ici_mean;             // 1/lambda_{i,k''} per interfering user
  std::vector<std::vector<double>> eve_pl;  // [j][user]
  std::vector<double> eve_lambda;           // [j]
  int eve_antennas = 1;
  OutageSpec spec;

  int messages() const { return users * parts; }
  int eves() const { return static_cast<int>(eve_lambda.size()); }
  int user_of(int msg) const { return msg / parts; }
  double pl_of(int msg) const { return pl[user_of(msg)]; }
  double eve_pl_of(int j, int msg) const { return eve_pl[j][user_of(msg)]; }
};

// Per-user budget P_{m,k} = total_power / scheduled users. With null_ici the
// interfering clusters are perfectly nulled.
ClusterLink make_cluster_link(const Scenario& s, int m, const OutageSpec& spec, double total_power,
                              int parts, bool null_ici = false);

// Realized received gains at the UAV for one cluster.
struct UavObservation {
  std::vector<double> gain;  // PL |w^H f|^2 per user
  std::vector<double> ici;   // P PL ||f||^2 sin^2(phi) |w^H e|^2 per interfering user
};

UavObservation observe_uav(const Scenario& s, int m, double total_power);

double sinr_uav(const DecodingOrder& order, int msg, const std::vector<double>& p,
                const UavObservation& obs, double sigma_sq);
// interferers == nullptr means every other message of the cluster
double sinr_eve(int msg, const std::vector<double>& p, const std::vector<double>& eve_gain, int parts,
                double sigma_sq, const std::vector<int>* interferers = nullptr);

double cop_closed_form(const ClusterLink& link, const DecodingOrder& order, int msg, double r,
                       const std::vector<double>& p);
double sop_closed_form(const ClusterLink& link, int j, int msg, double D, const std::vector<double>& p,
                       const std::vector<int>* interferers = nullptr);

// Smallest redundancy rate certified by the Lambert-W bound of the SOP.
double redundancy_bound(const ClusterLink& link, int j, int msg, const std::vector<double>& p,
                        const std::vector<int>* interferers = nullptr);
// |Psi(kappa*) - eps| / eps for the bound's defining equation
double redundancy_root_residual(const ClusterLink& link, int j, int msg, const std::vector<double>& p,
                                const std::vector<int>* interferers = nullptr);

int rate_exponent(const ClusterLink& link, const DecodingOrder& order, int msg);
double optimal_rate(const ClusterLink& link, const DecodingOrder& order, int msg,
                    const std::vector<double>& p);
// relative residual of exp(-sigma^2 beta/2) beta^{-A} = (eps/xi) prod(lambda/2)
// Largest r with cop_closed_form(r) <= eps_cop; exact inverse of the closed form.
double cop_target_rate(const ClusterLink& link, const DecodingOrder& order, int msg, const std::vector<double>& p);
double rate_equation_residual(const ClusterLink& link, const DecodingOrder& order, int msg,
                              const std::vector<double>& p, double r);

// D[j][msg]
double enst(const std::vector<double>& r, const std::vector<double>& cop,
            const std::vector<std::vector<double>>& D);
std::vector<double> enst_per_eve(const std::vector<double>& r, const std::vector<double>& cop,
                                 const std::vector<std::vector<double>>& D);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  long long trials = 0;
};

McEstimate estimate_cop_mc(const ClusterLink& link, const DecodingOrder& order, int msg, double r,
                           const std::vector<double>& p, long long trials, const RngStream& rng,
                           int threads = 1);
McEstimate estimate_sop_mc(const ClusterLink& link, int j, int msg, double D, const std::vector<double>& p,
                           long long trials, const RngStream& rng, int threads = 1,
                           const std::vector<int>* interferers = nullptr);

// Diagnostics with physically shared fading: one CN(0, I) channel per user for
// both sub-messages, and eve gains recomputed from a fresh Q per trial.
McEstimate estimate_cop_structural(const ClusterLink& link, const DecodingOrder& order, int msg, double r,
                                   const std::vector<double>& p, long long trials, const RngStream& rng,
                                   int threads = 1);
McEstimate estimate_sop_structural(const ClusterLink& link, int j, int msg, double D,
                                   const std::vector<double>& p, long long trials, const RngStream& rng,
                                   int threads = 1);

}  // namespace rsma

#endif  // RSMA_OUTAGE_ANALYTICS_HPP
