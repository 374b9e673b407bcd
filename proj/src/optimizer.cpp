#include "rsma/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace rsma {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kShrink = 1e-6;
constexpr double kInflate = 1e-7;

double threshold(double r) { return std::expm1(r * kLn2); }

double secured_margin(double r) { return 1e-9 * std::max(1.0, r); }

// ln psi of the COP-side constraint, in nats: sum_{Phi} ln p <= value.
double cop_side_limit(const ClusterLink& link, const DecodingOrder& order, int msg, double r) {
  const double beta = threshold(r);
  const auto after = order.after(msg);
  const int A = static_cast<int>(after.size() + link.ici_mean.size());
  double v = beta * link.spec.sigma_m_sq / 2.0 + A * std::log(beta) + std::log(link.spec.eps_cop);
  for (double y : link.ici_mean) v -= std::log(2.0 * y);
  for (int q : after) v -= std::log(4.0 * link.pl_of(q));
  return v;
}

// Chain at p tightened to the bound, each auxiliary loosened by (1 + inflate).
ChainState tight_chain(const ClusterLink& link, int j, int msg, const std::vector<double>& p, double inflate) {
  ChainState c;
  c.eve = j;
  c.msg = msg;
  const double lam = link.eve_lambda[j];
  const double sig = link.spec.sigma_e_sq;
  const double eps = link.spec.eps_sop;
  const double f = 1.0 + inflate;
  double sum_log_zeta = 0.0;
  for (int q = 0; q < static_cast<int>(p.size()); ++q) {
    if (q == msg) continue;
    sum_log_zeta -= std::log(p[q] * link.eve_pl_of(j, q) * lam);
    ++c.others;
  }
  if (c.others == 0) {
    c.theta = link.eve_pl_of(j, msg) * lam * std::log(1.0 / eps) / sig * p[msg] * f;
  } else {
    const double n = c.others;
    c.vartheta = std::exp((sum_log_zeta - std::log(eps)) / n) * f;
    c.nu = sig / n * c.vartheta * f;
    c.rho = lambert_w0(c.nu) * f;
    c.theta = n * link.eve_pl_of(j, msg) * lam / sig * p[msg] * c.rho * f;
  }
  c.D = std::log1p(c.theta) / kLn2 + inflate * (1.0 + std::log1p(c.theta) / kLn2);
  return c;
}

struct Built {
  BarrierProblem prob;
  Eigen::VectorXd x0;
  std::vector<int> offset;  // per chain
};

int chain_width(const ChainState& c) { return c.others == 0 ? 2 : 5; }

Built build_subproblem(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r, int eve,
                       const SpcaState& st, RateRule rule) {
  Built b;
  const int N = link.messages();
  int n = N;
  for (const auto& c : st.chains) {
    b.offset.push_back(n);
    n += chain_width(c);
  }
  auto& P = b.prob;
  P.n = n;
  P.c = Eigen::VectorXd::Zero(n);
  b.x0.resize(n);
  for (int q = 0; q < N; ++q) b.x0(q) = st.p[q];
  for (std::size_t i = 0; i < st.chains.size(); ++i) {
    const auto& c = st.chains[i];
    const int o = b.offset[i];
    b.x0(o) = c.D;
    b.x0(o + 1) = c.theta;
    if (c.others > 0) {
      b.x0(o + 2) = c.rho;
      b.x0(o + 3) = c.nu;
      b.x0(o + 4) = c.vartheta;
    }
  }
  P.scale = b.x0.cwiseAbs().cwiseMax(1e-300);

  // objective: minimize -sum beta sum_{Phi} PL p - sum ln(r - D)
  for (int msg = 0; msg < N; ++msg) {
    const double beta = threshold(r[msg]);
    for (int q : order.after(msg)) P.c(q) -= beta * link.pl_of(q);
  }
  for (std::size_t i = 0; i < st.chains.size(); ++i) {
    const auto& c = st.chains[i];
    if (c.eve != eve) continue;
    const double rate = r[c.msg];
    P.objective.push_back({{b.offset[i]}, [rate](const double* x, double* g, double* h) {
                             const double s = rate - x[0];
                             if (!(s > 0.0)) return kInf;
                             if (g) {
                               g[0] = 1.0 / s;
                               h[0] = 1.0 / (s * s);
                             }
                             return -std::log(s);
                           }});
  }

  // positivity and budgets
  for (int q = 0; q < N; ++q) P.linear.push_back({{{q, -1.0}}, 0.0});
  for (int k = 0; k < link.users; ++k) {
    LinearTerm t;
    for (int part = 0; part < link.parts; ++part) t.coef.push_back({k * link.parts + part, 1.0});
    t.constant = -link.budget[k];
    P.linear.push_back(t);
  }

  // COP side, log p linearized at p_t
  for (int msg = 0; msg < N && rule == RateRule::closed_form; ++msg) {
    const auto after = order.after(msg);
    if (after.empty() || !(r[msg] > 0.0)) continue;
    LinearTerm t;
    t.constant = -cop_side_limit(link, order, msg, r[msg]);
    for (int q : after) {
      t.coef.push_back({q, 1.0 / st.p[q]});
      t.constant += std::log(st.p[q]) - 1.0;
    }
    P.linear.push_back(t);
  }

  const double sig = link.spec.sigma_e_sq;
  const double eps = link.spec.eps_sop;
  for (std::size_t i = 0; i < st.chains.size(); ++i) {
    const auto& c = st.chains[i];
    const int o = b.offset[i];
    const int D = o, th = o + 1;
    const double lam = link.eve_lambda[c.eve];
    const double ple = link.eve_pl_of(c.eve, c.msg);

    // 1 + theta <= 2^D_t (1 + ln2 (D - D_t))
    const double g2 = std::exp2(c.D);
    P.linear.push_back({{{th, 1.0}, {D, -g2 * kLn2}}, 1.0 - g2 * (1.0 - kLn2 * c.D)});
    // D <= r
    P.linear.push_back({{{D, 1.0}}, -r[c.msg]});

    if (c.others == 0) {
      const double a0 = ple * lam * std::log(1.0 / eps) / sig;
      P.linear.push_back({{{c.msg, a0}, {th, -1.0}}, 0.0});
      continue;
    }
    const int rho = o + 2, nu = o + 3, vt = o + 4;
    const double n = c.others;
    const double a = n * ple * lam / sig;
    const double pt = st.p[c.msg], rt = c.rho;
    const double K = a * pt * rt / 4.0;
    // a p rho <= a p_t rho_t (p/p_t + rho/rho_t)^2 / 4 <= theta
    P.smooth.push_back({{c.msg, rho, th}, [K, pt, rt](const double* x, double* g, double* h) {
                          const double u = x[0] / pt + x[1] / rt;
                          if (g) {
                            g[0] = 2.0 * K * u / pt;
                            g[1] = 2.0 * K * u / rt;
                            g[2] = -1.0;
                            std::fill(h, h + 9, 0.0);
                            h[0] = 2.0 * K / (pt * pt);
                            h[1] = h[3] = 2.0 * K / (pt * rt);
                            h[4] = 2.0 * K / (rt * rt);
                          }
                          return K * u * u - x[2];
                        }});
    // W0(nu) tangent <= rho
    const double w = lambert_w0(c.nu);
    const double dw = w / (c.nu * (1.0 + w));
    P.linear.push_back({{{nu, dw}, {rho, -1.0}}, w - dw * c.nu});
    // sigma^2/n vartheta <= nu
    P.linear.push_back({{{vt, sig / n}, {nu, -1.0}}, 0.0});
    // (1/n)(sum [ln zeta_t + p_t/p - 1] - ln eps) <= ln vartheta
    SmoothTerm s;
    std::vector<double> pts;
    double cst = -std::log(eps);
    for (int q = 0; q < N; ++q) {
      if (q == c.msg) continue;
      s.idx.push_back(q);
      pts.push_back(st.p[q]);
      cst += -std::log(st.p[q] * link.eve_pl_of(c.eve, q) * lam) - 1.0;
    }
    s.idx.push_back(vt);
    const int k = static_cast<int>(pts.size());
    s.eval = [pts, cst, n, k](const double* x, double* g, double* h) {
      for (int a = 0; a <= k; ++a)
        if (!(x[a] > 0.0)) return kInf;
      double v = cst;
      for (int a = 0; a < k; ++a) v += pts[a] / x[a];
      if (g) {
        const int m = k + 1;
        std::fill(h, h + m * m, 0.0);
        for (int a = 0; a < k; ++a) {
          g[a] = -pts[a] / (n * x[a] * x[a]);
          h[a * m + a] = 2.0 * pts[a] / (n * x[a] * x[a] * x[a]);
        }
        g[k] = -1.0 / x[k];
        h[k * m + k] = 1.0 / (x[k] * x[k]);
      }
      return v / n - std::log(x[k]);
    };
    P.smooth.push_back(std::move(s));
  }
  return b;
}

ChainState chain_from(const Eigen::VectorXd& x, int o, const ChainState& tmpl) {
  ChainState c = tmpl;
  c.D = x(o);
  c.theta = x(o + 1);
  if (c.others > 0) {
    c.rho = x(o + 2);
    c.nu = x(o + 3);
    c.vartheta = x(o + 4);
  }
  return c;
}

// Re-expansion at p: tight chains where they keep D strictly below r,
// otherwise the (still strictly feasible) previous values.
SpcaState reexpand(const ClusterLink& link, const std::vector<double>& p, const std::vector<double>& r,
                   const std::vector<ChainState>& prev) {
  SpcaState st;
  st.p = p;
  for (const auto& old : prev) {
    double inflate = kInflate;
    bool done = false;
    for (int a = 0; a < 8 && !done; ++a, inflate /= 10.0) {
      const auto c = tight_chain(link, old.eve, old.msg, p, inflate);
      const double tight = redundancy_bound(link, old.eve, old.msg, p);
      if (c.D < r[old.msg] - 0.5 * (r[old.msg] - tight) || c.D <= old.D) {
        st.chains.push_back(c);
        done = true;
      }
    }
    if (!done) st.chains.push_back(old);
  }
  return st;
}

std::vector<std::vector<char>> secured_of(const ClusterLink& link, const SpcaState& st) {
  std::vector<std::vector<char>> s(link.eves(), std::vector<char>(link.messages(), 0));
  for (const auto& c : st.chains) s[c.eve][c.msg] = 1;
  return s;
}

bool audit_point(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r,
                 const std::vector<double>& p, const std::vector<std::vector<char>>& secured, RateRule rule) {
  AllocationSolution sol = evaluate_solution(link, order, r, p);
  sol.secured = secured;
  return audit_solution(link, sol, rule).ok();
}

}  // namespace

std::string to_string(RateRule rule) { return rule == RateRule::cop_target ? "cop_target" : "closed_form"; }

RateRule rate_rule_from_string(const std::string& name) {
  if (name == "closed_form") return RateRule::closed_form;
  if (name == "cop_target") return RateRule::cop_target;
  throw DomainError("unknown rate rule '" + name + "' (closed_form, cop_target)");
}

void SolverConfig::validate() const {
  if (T_max < 1 || Q_max < 1) throw DomainError("T_max and Q_max must be >= 1");
  if (!(delta_I > 0.0) || !(epsilon > 0.0)) throw DomainError("tolerances must be positive");
  if (!(subproblem_tol > 0.0)) throw DomainError("subproblem_tol must be positive");
  if (max_step_halvings < 0) throw DomainError("max_step_halvings must be >= 0");
}

bool SolverReport::inner_monotone() const {
  for (const auto& t : inner)
    for (std::size_t i = 1; i < t.values.size(); ++i)
      if (t.values[i] < t.values[i - 1]) return false;
  return true;
}

int SolverReport::max_inner_iterations() const {
  int m = 0;
  for (const auto& t : inner) m = std::max(m, static_cast<int>(t.values.size()) - 1);
  return m;
}

std::string SolverReport::to_text() const {
  std::ostringstream os;
  os.precision(10);
  os << "orders searched: " << orders_searched << "\n";
  os << "outer iterations: " << outer_iterations << (outer_converged ? " (converged)" : " (cap)") << "\n";
  for (const auto& t : inner) {
    os << "inner q=" << t.outer << " eve=" << t.eve << " steps=" << t.values.size() - 1
       << " rejected=" << t.rejected_steps << " F:";
    for (double v : t.values) os << ' ' << v;
    os << "\n";
  }
  for (std::size_t q = 0; q < rate_trace.size(); ++q) {
    os << "rates q=" << q << ":";
    for (double v : rate_trace[q]) os << ' ' << v;
    os << "\n";
  }
  os << "enst:";
  for (double v : enst_trace) os << ' ' << v;
  os << "\nkkt residual: " << kkt_residual << "\naudit: " << (audit_passed ? "pass" : "fail")
     << "\nwall time s: " << wall_time << "\n";
  return os.str();
}

double objective_F(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r, int eve,
                   const std::vector<double>& p, const std::vector<std::vector<char>>& secured) {
  const int N = link.messages();
  double F = 0.0;
  for (int msg = 0; msg < N; ++msg) {
    const double beta = threshold(r[msg]);
    for (int q : order.after(msg)) F += beta * link.pl_of(q) * p[q];
  }
  if (eve < 0) return F;
  for (int msg = 0; msg < N; ++msg) {
    if (!secured[eve][msg]) continue;
    const double gap = r[msg] - redundancy_bound(link, eve, msg, p);
    if (!(gap > 0.0)) return kNegInf;
    F += std::log(gap);
  }
  return F;
}

AllocationSolution evaluate_solution(const ClusterLink& link, const DecodingOrder& order,
                                     const std::vector<double>& r, const std::vector<double>& p) {
  AllocationSolution s;
  s.order = order;
  s.p = p;
  s.r = r;
  const int N = link.messages();
  s.D.assign(link.eves(), std::vector<double>(N, 0.0));
  s.secured.assign(link.eves(), std::vector<char>(N, 0));
  for (int j = 0; j < link.eves(); ++j)
    for (int q = 0; q < N; ++q) {
      s.D[j][q] = redundancy_bound(link, j, q, p);
      s.secured[j][q] = s.D[j][q] < r[q] ? 1 : 0;
    }
  for (int q = 0; q < N; ++q) s.cop.push_back(cop_closed_form(link, order, q, r[q], p));
  s.objective = enst(r, s.cop, s.D);
  if (link.eves() > 0) {
    const auto per = enst_per_eve(r, s.cop, s.D);
    s.eve = static_cast<int>(std::min_element(per.begin(), per.end()) - per.begin());
  }
  return s;
}

FeasibilityAudit audit_solution(const ClusterLink& link, const AllocationSolution& sol, RateRule rule) {
  FeasibilityAudit a;
  const int N = link.messages();
  const double tol = 1e-9;
  for (int k = 0; k < link.users; ++k) {
    double s = 0.0;
    for (int part = 0; part < link.parts; ++part) {
      const double v = sol.p[k * link.parts + part];
      if (v < 0.0) a.budget = false;
      s += v;
    }
    if (s > link.budget[k] * (1.0 + tol)) a.budget = false;
  }
  for (int j = 0; j < link.eves(); ++j)
    for (int q = 0; q < N; ++q) {
      if (!sol.secured.empty() && sol.secured[j][q] && sol.D[j][q] > sol.r[q] + tol * std::max(1.0, sol.r[q]))
        a.rate_dominance = false;
      if (sol.p[q] > 0.0 && sop_closed_form(link, j, q, sol.D[j][q], sol.p) > link.spec.eps_sop * (1.0 + 1e-6))
        a.sop = false;
    }
  if (rule == RateRule::cop_target) {
    for (int q = 0; q < N; ++q)
      if (cop_closed_form(link, sol.order, q, sol.r[q], sol.p) > link.spec.eps_cop * (1.0 + 1e-6)) a.cop = false;
    return a;
  }
  for (int q = 0; q < N; ++q) {
    const auto after = sol.order.after(q);
    if (after.empty() || !(sol.r[q] > 0.0)) continue;
    double lhs = 0.0;
    for (int i : after) lhs += std::log(sol.p[i]);
    if (lhs > cop_side_limit(link, sol.order, q, sol.r[q]) + 1e-7) a.cop_side = false;
  }
  return a;
}

std::vector<double> rate_update(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& p,
                                RateRule rule) {
  std::vector<double> r;
  for (int q = 0; q < link.messages(); ++q)
    r.push_back(rule == RateRule::cop_target ? cop_target_rate(link, order, q, p) : optimal_rate(link, order, q, p));
  return r;
}

SpcaState initial_state(const ClusterLink& link, const std::vector<double>& p, const std::vector<double>& r) {
  SpcaState st;
  st.p = p;
  for (int j = 0; j < link.eves(); ++j)
    for (int q = 0; q < link.messages(); ++q) {
      const auto c = tight_chain(link, j, q, p, kInflate);
      if (std::isfinite(c.D) && c.D < r[q] - secured_margin(r[q])) st.chains.push_back(c);
    }
  return st;
}

double kkt_residual(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r, int eve,
                    const SpcaState& state, RateRule rule) {
  const auto b = build_subproblem(link, order, r, eve, state, rule);
  if (b.prob.max_violation(b.x0) > 1e-9) throw DomainError("kkt_residual: point is infeasible");
  Eigen::VectorXd gf = b.prob.c;
  const double res = rsma::kkt_residual(b.prob, b.x0);
  const double ref = std::max(1.0, b.prob.scale.cwiseProduct(gf).norm());
  return res / ref;
}

SubproblemResult solve_subproblem(const ClusterLink& link, const DecodingOrder& order,
                                  const std::vector<double>& r, int eve, const SpcaState& state,
                                  const SolverConfig& config) {
  const auto b = build_subproblem(link, order, r, eve, state, config.rate_rule);
  BarrierOptions opt;
  opt.gap_tol = config.subproblem_tol;
  const auto res = solve_barrier(b.prob, b.x0, opt);
  SubproblemResult out;
  out.converged = res.converged;
  out.newton_iterations = res.newton_iterations;
  out.surrogate_objective = -res.objective;
  out.next.p.assign(res.x.data(), res.x.data() + link.messages());
  out.next.iteration = state.iteration + 1;
  out.next.trace = state.trace;
  for (std::size_t i = 0; i < state.chains.size(); ++i)
    out.next.chains.push_back(chain_from(res.x, b.offset[i], state.chains[i]));
  const double ref = std::max(1.0, b.prob.scale.cwiseProduct(b.prob.c).norm());
  out.kkt_residual = rsma::kkt_residual(b.prob, res.x) / ref;
  return out;
}

InnerResult inner_loop(const ClusterLink& link, const DecodingOrder& order, const std::vector<double>& r, int eve,
                       const std::vector<double>& p_init, const SolverConfig& config) {
  InnerResult out;
  out.trace.eve = eve;
  SpcaState st = initial_state(link, p_init, r);
  const auto secured = secured_of(link, st);
  double F = objective_F(link, order, r, eve, st.p, secured);
  out.trace.values.push_back(F);
  out.trace.iterates.push_back(st.p);
  out.trace.rates = r;
  out.trace.secured = secured;
  st.trace.push_back(F);

  for (int t = 0; t < config.T_max; ++t) {
    const auto b = build_subproblem(link, order, r, eve, st, config.rate_rule);
    BarrierOptions opt;
    opt.gap_tol = config.subproblem_tol;
    const auto res = solve_barrier(b.prob, b.x0, opt);
    const double ref = std::max(1.0, b.prob.scale.cwiseProduct(b.prob.c).norm());
    Eigen::VectorXd x = res.x;
    bool accepted = false;
    double F_new = F;
    for (int h = 0; h <= config.max_step_halvings; ++h) {
      if (h > 0) {
        x = b.x0 + 0.5 * (x - b.x0);
        ++out.trace.rejected_steps;
      }
      std::vector<double> p(x.data(), x.data() + link.messages());
      F_new = objective_F(link, order, r, eve, p, secured);
      if (F_new >= F && audit_point(link, order, r, p, secured, config.rate_rule)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    out.kkt_residual = rsma::kkt_residual(b.prob, x) / ref;
    std::vector<ChainState> chains;
    for (std::size_t i = 0; i < st.chains.size(); ++i) chains.push_back(chain_from(x, b.offset[i], st.chains[i]));
    std::vector<double> p(x.data(), x.data() + link.messages());
    SpcaState next = reexpand(link, p, r, chains);
    next.iteration = st.iteration + 1;
    next.trace = st.trace;
    next.trace.push_back(F_new);
    st = std::move(next);
    out.trace.values.push_back(F_new);
    out.trace.iterates.push_back(st.p);
    const double change = F_new - F;
    F = F_new;
    if (std::abs(change) < config.delta_I) break;
  }
  out.trace.audit_passed = audit_point(link, order, r, st.p, secured, config.rate_rule);
  out.objective = F;
  out.state = std::move(st);
  return out;
}

AllocationSolution outer_loop(const ClusterLink& link, const DecodingOrder& order, const SolverConfig& config,
                              SolverReport* report) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int N = link.messages();
  std::vector<double> p(N);
  for (int q = 0; q < N; ++q) p[q] = link.budget[link.user_of(q)] / link.parts;
  std::vector<double> r = rate_update(link, order, p, config.rate_rule);
  AllocationSolution best = evaluate_solution(link, order, r, p);
  if (report) {
    report->rate_trace.push_back(r);
    report->enst_trace.push_back(best.objective);
  }
  const std::vector<int> eves = link.eves() > 0 ? [&] {
    std::vector<int> e(link.eves());
    for (int j = 0; j < link.eves(); ++j) e[j] = j;
    return e;
  }() : std::vector<int>{-1};

  bool converged = false;
  int q = 0;
  double kkt = 0.0;
  bool audit = true;
  for (; q < config.Q_max && !converged; ++q) {
    std::vector<double> p_start(p);
    for (double& v : p_start) v *= 1.0 - kShrink;
    int pick = -1;
    InnerResult chosen;
    for (int j : eves) {
      auto inner = inner_loop(link, order, r, j, p_start, config);
      inner.trace.outer = q;
      if (report) report->inner.push_back(inner.trace);
      if (pick < 0 || inner.objective < chosen.objective) {
        pick = j;
        chosen = std::move(inner);
      }
    }
    kkt = chosen.kkt_residual;
    audit = audit && chosen.trace.audit_passed;
    p = chosen.state.p;
    const auto r_new = rate_update(link, order, p, config.rate_rule);
    double change = 0.0;
    for (int i = 0; i < N; ++i) change = std::max(change, std::abs(r_new[i] - r[i]));
    r = r_new;
    converged = change < config.epsilon;
    auto cand = evaluate_solution(link, order, r, p);
    cand.surrogate_objective = chosen.objective;
    if (report) {
      report->rate_trace.push_back(r);
      report->enst_trace.push_back(cand.objective);
    }
    if (cand.objective > best.objective) best = std::move(cand);
  }
  if (report) {
    report->outer_iterations = q;
    report->outer_converged = converged;
    report->kkt_residual = kkt;
    report->audit_passed = audit && audit_solution(link, best, config.rate_rule).ok();
    report->wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return best;
}

AllocationSolution search_decoding_orders(const ClusterLink& link, const SolverConfig& config, SolverReport* report,
                                          std::vector<AllocationSolution>* per_order,
                                          const std::vector<DecodingOrder>* orders) {
  if (!orders && link.users > 4) throw DomainError("order search is exhaustive and limited to 4 users per cluster");
  const auto start = std::chrono::steady_clock::now();
  const auto all = orders ? *orders : DecodingOrder::enumerate(link.users, link.parts);
  if (all.empty()) throw DomainError("search_decoding_orders: no candidate order");
  AllocationSolution best;
  bool have = false;
  for (const auto& order : all) {
    SolverReport rep;
    auto sol = outer_loop(link, order, config, &rep);
    if (per_order) per_order->push_back(sol);
    if (!have || sol.objective > best.objective) {
      best = std::move(sol);
      have = true;
      if (report) *report = std::move(rep);
    }
  }
  if (report) {
    report->orders_searched = all.size();
    report->wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return best;
}

}  // namespace rsma
