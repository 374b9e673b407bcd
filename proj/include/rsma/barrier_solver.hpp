#ifndef RSMA_BARRIER_SOLVER_HPP
#define RSMA_BARRIER_SOLVER_HPP

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace rsma {

// sum coef * x + constant
struct LinearTerm {
  std::vector<std::pair<int, double>> coef;
  double constant = 0.0;
};

// Convex function of a few variables. eval receives the gathered local values
// and, when grad is non-null, writes the local gradient and the row-major
// local Hessian. Outside its domain it returns +inf.
struct SmoothTerm {
  std::vector<int> idx;
  std::function<double(const double* x, double* grad, double* hess)> eval;
};

// minimize c^T x + sum objective(x)  s.t.  linear_i(x) <= 0, smooth_i(x) <= 0
struct BarrierProblem {
  int n = 0;
  Eigen::VectorXd c;
  std::vector<SmoothTerm> objective;
  std::vector<LinearTerm> linear;
  std::vector<SmoothTerm> smooth;
  Eigen::VectorXd scale;  // optional per-variable scaling

  int constraints() const { return static_cast<int>(linear.size() + smooth.size()); }
  double objective_value(const Eigen::VectorXd& x) const;
  bool strictly_feasible(const Eigen::VectorXd& x) const;
  double max_violation(const Eigen::VectorXd& x) const;
};

struct BarrierOptions {
  double gap_tol = 1e-9;   // relative duality-gap target m/t
  double mu = 20.0;
  int max_newton = 400;
};

struct BarrierResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  bool converged = false;
  int newton_iterations = 0;
  double t = 0.0;
  std::string message;
};

BarrierResult solve_barrier(const BarrierProblem& prob, const Eigen::VectorXd& x0,
                            const BarrierOptions& opt = {});

// Lawson-Hanson non-negative least squares.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter = 0);

// || [grad g; diag(g)] gamma + [grad f; 0] || minimized over gamma >= 0,
// in the problem's scaled coordinates.
double kkt_residual(const BarrierProblem& prob, const Eigen::VectorXd& x);

}  // namespace rsma

#endif  // RSMA_BARRIER_SOLVER_HPP
