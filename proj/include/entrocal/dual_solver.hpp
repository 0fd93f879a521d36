#pragma once

// Safeguarded Newton solver for the dual calibration problem
//
//   lambda_hat = argmin  sum_{i in S} rho(x_i' lambda) - totals' lambda,
//
// whose stationarity condition is the calibration equation
// sum_i rho1(x_i' lambda) x_i = totals. Steps are damped by a
// fraction-to-boundary rule so every x_i' lambda stays strictly inside the
// entropy's dual domain, then backtracked until the objective decreases.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "entrocal/any_entropy.hpp"

namespace entrocal {

struct SolverControls {
  int max_iter = 100;
  double grad_tol = 1e-8;      // relative to max(1, ||totals||_inf)
  double step_shrink = 0.5;    // backtracking factor
  double domain_margin = 0.995;  // fraction of the distance to the boundary
  double ridge = 0.0;          // Hessian regularization
};

struct CalibrationProblem {
  Eigen::MatrixXd design;  // n x p sampled covariate rows
  Eigen::VectorXd totals;  // p population benchmarks
  AnyEntropy entropy = EntropyFamily::squared_loss();
  SolverControls controls;
};

struct CalibrationSolution {
  Eigen::VectorXd lambda;
  Eigen::VectorXd weights;   // rho1(x_i' lambda)
  Eigen::VectorXd residual;  // sum_i w_i x_i - totals
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  std::vector<std::string> warnings;
};

// Direction a with design * a = 1 elementwise (least squares, checked to
// 1e-8 in the max norm), or nullopt when no such direction exists.
std::optional<Eigen::VectorXd> intercept_direction(
    const Eigen::MatrixXd& design);

// lambda0 = g(N/n) * a, the dual point whose weights all equal N/n. N is
// read off totals' a-coordinate; the weight is nudged inside the domain
// when N/n falls outside (ShiftedKL needs N/n > 1; a Huber cap below N/n
// starts just inside the cap).
Eigen::VectorXd default_init(const CalibrationProblem& problem);

double dual_objective(const CalibrationProblem& problem,
                      const Eigen::VectorXd& lambda);

CalibrationSolution solve_dual(
    const CalibrationProblem& problem,
    const std::optional<Eigen::VectorXd>& init = std::nullopt);

}  // namespace entrocal
