#include "rsma/harness.hpp"

#include "rsma/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rsma {

namespace {

constexpr std::uint64_t kValidateTag = 0x76616c6964ULL;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SweepSpec effective_sweep(const ScenarioConfig& cfg, const SweepSpec* sweep) {
  if (sweep) return *sweep;
  if (cfg.sweep) return *cfg.sweep;
  SweepSpec s;
  s.parameter = "P";
  s.values = {cfg.power_db};
  s.schemes = cfg.schemes;
  return s;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

// Inverse of a monotone closed form on [0, inf) by bisection.
template <typename F>
double invert(F f, double target, bool increasing) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && (increasing ? f(hi) < target : f(hi) > target); ++i) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < target) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double cop_unnormalized(const ClusterLink& link, const DecodingOrder& order, int msg, double r,
                        const std::vector<double>& p) {
  const double beta = std::exp2(r) - 1.0;
  double log_success = -beta * link.spec.sigma_m_sq / 2.0;
  for (int q : order.after(msg)) log_success -= std::log1p(p[q] * link.pl_of(q) * beta);
  for (double y : link.ici_mean) log_success -= std::log1p(y * beta / 2.0);
  return -std::expm1(log_success);
}

}  // namespace

const std::vector<double>& ExperimentResult::samples(Scheme s, std::size_t value_index) const {
  for (std::size_t i = 0; i < schemes.size(); ++i)
    if (schemes[i] == s) return per_trial.at(value_index)[i];
  throw DomainError("scheme " + to_string(s) + " was not run");
}

double ExperimentResult::mean(Scheme s, std::size_t value_index) const { return mean_of(samples(s, value_index)); }

std::vector<double> evaluate_schemes(const Scenario& s, const std::vector<Scheme>& schemes, const OutageSpec& spec,
                                     double total_power, const SolverConfig& solver) {
  const bool want_rsma = std::find(schemes.begin(), schemes.end(), Scheme::RSMA) != schemes.end();
  const bool want_sic = std::find(schemes.begin(), schemes.end(), Scheme::RSMA_eve_SIC) != schemes.end();
  double rsma = 0.0, sic = 0.0;
  if (want_rsma || want_sic) {
    for (int m = 0; m < s.plan.clusters(); ++m) {
      if (s.plan.members[m].empty()) continue;
      const auto link = make_cluster_link(s, m, spec, total_power, 2);
      const auto sol = search_decoding_orders(link, solver);
      rsma += sol.objective;
      sic += eve_sic_variant(link, sol).objective;
    }
  }
  std::vector<double> out;
  for (Scheme sc : schemes) {
    if (sc == Scheme::RSMA)
      out.push_back(rsma);
    else if (sc == Scheme::RSMA_eve_SIC)
      out.push_back(sic);
    else
      out.push_back(evaluate_scheme(s, sc, spec, total_power, solver).enst);
  }
  return out;
}

ExperimentResult run_experiment(const ScenarioConfig& config, const SweepSpec* sweep) {
  config.validate();
  const SweepSpec sw = effective_sweep(config, sweep);
  sw.validate();
  ExperimentResult res;
  res.parameter = sw.parameter;
  res.values = sw.values;
  res.schemes = sw.schemes;
  const std::size_t V = sw.values.size(), S = sw.schemes.size(), T = static_cast<std::size_t>(config.trials);
  res.per_trial.assign(V, std::vector<std::vector<double>>(S, std::vector<double>(T, 0.0)));
  std::vector<ScenarioConfig> point;
  for (double v : sw.values) point.push_back(apply_sweep_value(config, sw.parameter, v));

  parallel_for(V * T, config.threads, [&](std::size_t job) {
    const std::size_t v = job / T, t = job % T;
    const auto& c = point[v];
    const Scenario s = generate_scenario(c.scenario, c.seed, t);
    const auto e = evaluate_schemes(s, sw.schemes, c.outage, c.total_power(), c.solver);
    for (std::size_t k = 0; k < S; ++k) res.per_trial[v][k][t] = e[k];
  });

  for (std::size_t k = 0; k < S; ++k)
    for (std::size_t v = 0; v < V; ++v) {
      const auto& x = res.per_trial[v][k];
      res.table.push_back({to_string(sw.schemes[k]), sw.parameter, sw.values[v], mean_of(x), stderr_of(x),
                           static_cast<long long>(T)});
    }
  return res;
}

std::string convergence_csv(const ScenarioConfig& config, const SweepSpec* sweep) {
  config.validate();
  const SweepSpec sw = effective_sweep(config, sweep);
  std::ostringstream os;
  os << "parameter,value,cluster,order,outer,eve,iteration,objective\r\n";
  for (double v : sw.values) {
    const auto c = apply_sweep_value(config, sw.parameter, v);
    const Scenario s = generate_scenario(c.scenario, c.seed, 0);
    for (int m = 0; m < s.plan.clusters(); ++m) {
      if (s.plan.members[m].empty()) continue;
      const auto link = make_cluster_link(s, m, c.outage, c.total_power(), 2);
      SolverReport rep;
      const auto sol = search_decoding_orders(link, c.solver, &rep);
      for (const auto& tr : rep.inner)
        for (std::size_t i = 0; i < tr.values.size(); ++i)
          os << sw.parameter << ',' << num(v) << ',' << m << ',' << csv_field(sol.order.to_string()) << ','
             << tr.outer << ',' << tr.eve << ',' << i << ',' << num(tr.values[i]) << "\r\n";
    }
  }
  return os.str();
}

std::string verdict_for(double closed_form, const McEstimate& mc, double resolution, double* z) {
  const double diff = mc.estimate - closed_form;
  double zz = 0.0;
  if (mc.standard_error > 0.0)
    zz = diff / mc.standard_error;
  else if (diff != 0.0)
    zz = std::copysign(std::numeric_limits<double>::infinity(), diff);
  if (z) *z = zz;
  if (3.0 * mc.standard_error > resolution) return "inconclusive";
  return std::abs(zz) <= 3.0 ? "pass" : "fail";
}

std::string ValidationReport::to_csv() const {
  std::ostringstream os;
  os << "check,scenario,quantity,closed_form,mc_estimate,stderr,z,verdict\r\n";
  for (const auto& r : rows)
    os << r.check << ',' << r.scenario << ',' << csv_field(r.quantity) << ',' << num(r.closed_form) << ','
       << num(r.mc_estimate) << ',' << num(r.standard_error) << ',' << num(r.z) << ',' << r.verdict << "\r\n";
  return os.str();
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "closed-form checks: " << passed << " pass, " << failed << " fail, " << inconclusive
     << " inconclusive; max |z| = " << max_abs_z;
  return os.str();
}

ValidationReport validate_closed_forms(const ScenarioConfig& config, const ValidateOptions& options) {
  config.validate();
  ValidationReport rep;
  const RngStream root(config.seed, kValidateTag);
  const RngStream mc_root = options.stream_salt ? root.substream(4, options.stream_salt) : root;
  const double P = config.total_power();
  for (int sc = 0; sc < config.check.scenarios; ++sc) {
    if (options.only_scenario >= 0 && sc != options.only_scenario) continue;
    const Scenario s = generate_scenario(config.scenario, config.seed ^ kValidateTag, static_cast<std::uint64_t>(sc));
    RngStream pick = root.substream(1, static_cast<std::uint64_t>(sc));
    const int M = s.plan.clusters();
    int m = static_cast<int>(pick.uniform() * M) % M;
    for (int a = 0; a < M && s.plan.members[m].empty(); ++a) m = (m + 1) % M;
    if (s.plan.members[m].empty()) throw DomainError("validate: scenario without scheduled users");
    const auto link = make_cluster_link(s, m, config.outage, P, 2);
    std::vector<double> p(link.messages());
    for (int k = 0; k < link.users; ++k) {
      const double u = 0.2 + 0.6 * pick.uniform();
      p[2 * k] = u * link.budget[k];
      p[2 * k + 1] = (1.0 - u) * link.budget[k];
    }
    const auto orders = DecodingOrder::enumerate(link.users, 2);
    const auto& order = orders[static_cast<std::size_t>(pick.uniform() * orders.size()) % orders.size()];
    const int msg = static_cast<int>(pick.uniform() * link.messages()) % link.messages();
    const double u_cop = 0.05 + 0.9 * pick.uniform();
    const double u_sop = 0.05 + 0.9 * pick.uniform();

    const double r = invert([&](double x) { return cop_closed_form(link, order, msg, x, p); }, u_cop, true);
    const double cf_cop = options.corrupt_cop ? cop_unnormalized(link, order, msg, r, p)
                                              : cop_closed_form(link, order, msg, r, p);
    const auto mc_cop =
        estimate_cop_mc(link, order, msg, r, p, config.check.trials, mc_root.substream(2, sc), config.threads);

    ValidationRow row;
    row.check = "cop";
    row.scenario = sc;
    row.quantity = "cluster " + std::to_string(m) + " msg u" + std::to_string(msg / 2) + "." +
                   std::to_string(msg % 2 + 1) + " order " + order.to_string() + " r=" + num(r);
    row.closed_form = cf_cop;
    row.mc_estimate = mc_cop.estimate;
    row.standard_error = mc_cop.standard_error;
    row.verdict = verdict_for(cf_cop, mc_cop, config.check.resolution, &row.z);
    rep.rows.push_back(row);

    if (link.eves() > 0) {
      const int j = static_cast<int>(pick.uniform() * link.eves()) % link.eves();
      const double D = invert([&](double x) { return sop_closed_form(link, j, msg, x, p); }, u_sop, false);
      const double cf_sop = sop_closed_form(link, j, msg, D, p);
      const auto mc_sop =
          estimate_sop_mc(link, j, msg, D, p, config.check.trials, mc_root.substream(3, sc), config.threads);
      ValidationRow srow;
      srow.check = "sop";
      srow.scenario = sc;
      srow.quantity = "cluster " + std::to_string(m) + " eve " + std::to_string(j) + " msg u" +
                      std::to_string(msg / 2) + "." + std::to_string(msg % 2 + 1) + " D=" + num(D);
      srow.closed_form = cf_sop;
      srow.mc_estimate = mc_sop.estimate;
      srow.standard_error = mc_sop.standard_error;
      srow.verdict = verdict_for(cf_sop, mc_sop, config.check.resolution, &srow.z);
      rep.rows.push_back(srow);
    }
  }
  for (const auto& r : rep.rows) {
    if (r.verdict == "pass") ++rep.passed;
    else if (r.verdict == "fail") ++rep.failed;
    else ++rep.inconclusive;
    rep.max_abs_z = std::max(rep.max_abs_z, std::abs(r.z));
  }
  return rep;
}

}  // namespace rsma
