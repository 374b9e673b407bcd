#include "rsma/barrier_solver.hpp"

#include <cmath>
#include <limits>

namespace rsma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double linear_value(const LinearTerm& t, const Eigen::VectorXd& x) {
  double v = t.constant;
  for (const auto& [i, a] : t.coef) v += a * x(i);
  return v;
}

struct Local {
  std::vector<double> x, g, h;
};

double smooth_value(const SmoothTerm& t, const Eigen::VectorXd& x, Local& buf, bool derivs) {
  const std::size_t k = t.idx.size();
  buf.x.resize(k);
  for (std::size_t a = 0; a < k; ++a) buf.x[a] = x(t.idx[a]);
  if (!derivs) return t.eval(buf.x.data(), nullptr, nullptr);
  buf.g.assign(k, 0.0);
  buf.h.assign(k * k, 0.0);
  return t.eval(buf.x.data(), buf.g.data(), buf.h.data());
}

Eigen::VectorXd scale_of(const BarrierProblem& p) {
  if (p.scale.size() == p.n) return p.scale;
  return Eigen::VectorXd::Ones(p.n);
}

// Barrier function t f0 - sum log(-g); +inf outside the domain.
double barrier_value(const BarrierProblem& p, const Eigen::VectorXd& x, double t, Local& buf) {
  double f = p.c.dot(x);
  for (const auto& o : p.objective) {
    const double v = smooth_value(o, x, buf, false);
    if (!std::isfinite(v)) return kInf;
    f += v;
  }
  double phi = t * f;
  for (const auto& l : p.linear) {
    const double g = linear_value(l, x);
    if (!(g < 0.0)) return kInf;
    phi -= std::log(-g);
  }
  for (const auto& s : p.smooth) {
    const double g = smooth_value(s, x, buf, false);
    if (!(g < 0.0)) return kInf;
    phi -= std::log(-g);
  }
  return phi;
}

void barrier_derivs(const BarrierProblem& p, const Eigen::VectorXd& x, double t, Eigen::VectorXd& grad,
                    Eigen::MatrixXd& hess, Local& buf) {
  grad = t * p.c;
  hess.setZero(p.n, p.n);
  for (const auto& o : p.objective) {
    smooth_value(o, x, buf, true);
    const std::size_t k = o.idx.size();
    for (std::size_t a = 0; a < k; ++a) {
      grad(o.idx[a]) += t * buf.g[a];
      for (std::size_t b = 0; b < k; ++b) hess(o.idx[a], o.idx[b]) += t * buf.h[a * k + b];
    }
  }
  for (const auto& l : p.linear) {
    const double g = linear_value(l, x);
    const double inv = -1.0 / g;
    for (const auto& [i, a] : l.coef) {
      grad(i) += inv * a;
      for (const auto& [j, b] : l.coef) hess(i, j) += inv * inv * a * b;
    }
  }
  for (const auto& s : p.smooth) {
    const double g = smooth_value(s, x, buf, true);
    const double inv = -1.0 / g;
    const std::size_t k = s.idx.size();
    for (std::size_t a = 0; a < k; ++a) {
      grad(s.idx[a]) += inv * buf.g[a];
      for (std::size_t b = 0; b < k; ++b)
        hess(s.idx[a], s.idx[b]) += inv * inv * buf.g[a] * buf.g[b] + inv * buf.h[a * k + b];
    }
  }
}

}  // namespace

double BarrierProblem::objective_value(const Eigen::VectorXd& x) const {
  Local buf;
  double f = c.dot(x);
  for (const auto& o : objective) f += smooth_value(o, x, buf, false);
  return f;
}

bool BarrierProblem::strictly_feasible(const Eigen::VectorXd& x) const {
  Local buf;
  for (const auto& l : linear)
    if (!(linear_value(l, x) < 0.0)) return false;
  for (const auto& s : smooth)
    if (!(smooth_value(s, x, buf, false) < 0.0)) return false;
  for (const auto& o : objective)
    if (!std::isfinite(smooth_value(o, x, buf, false))) return false;
  return true;
}

double BarrierProblem::max_violation(const Eigen::VectorXd& x) const {
  Local buf;
  double v = 0.0;
  for (const auto& l : linear) v = std::max(v, linear_value(l, x));
  for (const auto& s : smooth) {
    const double g = smooth_value(s, x, buf, false);
    v = std::max(v, std::isfinite(g) ? g : kInf);
  }
  return v;
}

BarrierResult solve_barrier(const BarrierProblem& prob, const Eigen::VectorXd& x0, const BarrierOptions& opt) {
  BarrierResult res;
  res.x = x0;
  if (!prob.strictly_feasible(x0)) {
    res.message = "start point is not strictly feasible";
    res.objective = prob.objective_value(x0);
    return res;
  }
  const Eigen::VectorXd s = scale_of(prob);
  const int m = std::max(prob.constraints(), 1);
  Local buf;
  Eigen::VectorXd x = x0;
  double f = prob.objective_value(x);
  double t = m / std::max(1.0, std::abs(f));
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  while (true) {
    // centering
    for (int it = 0; it < 100 && res.newton_iterations < opt.max_newton; ++it) {
      ++res.newton_iterations;
      barrier_derivs(prob, x, t, grad, hess, buf);
      const Eigen::VectorXd gy = s.cwiseProduct(grad);
      Eigen::MatrixXd hy = s.asDiagonal() * hess * s.asDiagonal();
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hy);
      Eigen::VectorXd dy = ldlt.solve(-gy);
      double dec = -gy.dot(dy);
      if (ldlt.info() != Eigen::Success || !(dec > 0.0) || !dy.allFinite()) {
        const double reg = 1e-10 * std::max(1.0, hy.diagonal().cwiseAbs().maxCoeff());
        hy.diagonal().array() += reg;
        dy = hy.ldlt().solve(-gy);
        dec = -gy.dot(dy);
        if (!(dec > 0.0)) break;
      }
      if (dec / 2.0 <= 1e-12) break;
      const Eigen::VectorXd dx = s.cwiseProduct(dy);
      const double phi0 = barrier_value(prob, x, t, buf);
      double step = 1.0;
      Eigen::VectorXd xn;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        xn = x + step * dx;
        const double phi = barrier_value(prob, xn, t, buf);
        if (phi <= phi0 - 0.25 * step * dec) {
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
      x = xn;
    }
    f = prob.objective_value(x);
    if (m / t <= opt.gap_tol * std::max(1.0, std::abs(f))) {
      res.converged = true;
      break;
    }
    if (res.newton_iterations >= opt.max_newton) {
      res.message = "newton iteration cap reached";
      break;
    }
    t *= opt.mu;
  }
  res.x = x;
  res.objective = f;
  res.t = t;
  return res;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter) {
  const int n = static_cast<int>(A.cols());
  if (max_iter <= 0) max_iter = 3 * n + 10;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()) * std::max(1.0, b.cwiseAbs().maxCoeff());

  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<int> P;
    for (int i = 0; i < n; ++i)
      if (passive[i]) P.push_back(i);
    z.setZero(n);
    if (P.empty()) return;
    Eigen::MatrixXd Ap(A.rows(), static_cast<int>(P.size()));
    for (std::size_t k = 0; k < P.size(); ++k) Ap.col(static_cast<int>(k)) = A.col(P[k]);
    const Eigen::VectorXd zp = Ap.completeOrthogonalDecomposition().solve(b);
    for (std::size_t k = 0; k < P.size(); ++k) z(P[k]) = zp(static_cast<int>(k));
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    const Eigen::VectorXd w = A.transpose() * (b - A * x);
    int best = -1;
    double best_w = tol;
    for (int i = 0; i < n; ++i)
      if (!passive[i] && w(i) > best_w) {
        best_w = w(i);
        best = i;
      }
    if (best < 0) break;
    passive[best] = true;
    Eigen::VectorXd z;
    for (int inner = 0; inner < max_iter; ++inner) {
      solve_passive(z);
      bool all_pos = true;
      for (int i = 0; i < n; ++i)
        if (passive[i] && z(i) <= 0.0) all_pos = false;
      if (all_pos) break;
      double alpha = 1.0;
      for (int i = 0; i < n; ++i)
        if (passive[i] && z(i) <= 0.0) alpha = std::min(alpha, x(i) / (x(i) - z(i)));
      x += alpha * (z - x);
      for (int i = 0; i < n; ++i)
        if (passive[i] && x(i) <= 1e-15) {
          passive[i] = false;
          x(i) = 0.0;
        }
    }
    x = z;
  }
  return x;
}

double kkt_residual(const BarrierProblem& prob, const Eigen::VectorXd& x) {
  const Eigen::VectorXd s = scale_of(prob);
  Local buf;
  Eigen::VectorXd gf = prob.c;
  for (const auto& o : prob.objective) {
    smooth_value(o, x, buf, true);
    for (std::size_t a = 0; a < o.idx.size(); ++a) gf(o.idx[a]) += buf.g[a];
  }
  const int m = prob.constraints();
  const int n = prob.n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + m, m);
  int c = 0;
  for (const auto& l : prob.linear) {
    for (const auto& [i, a] : l.coef) A(i, c) += a;
    A(n + c, c) = linear_value(l, x);
    ++c;
  }
  for (const auto& sm : prob.smooth) {
    const double g = smooth_value(sm, x, buf, true);
    for (std::size_t a = 0; a < sm.idx.size(); ++a) A(sm.idx[a], c) += buf.g[a];
    A(n + c, c) = g;
    ++c;
  }
  for (int i = 0; i < n; ++i) A.row(i) *= s(i);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + m);
  b.head(n) = -s.cwiseProduct(gf);
  if (m == 0) return b.norm();
  const Eigen::VectorXd gamma = nnls(A, b);
  return (A * gamma - b).norm();
}

}  // namespace rsma
