#pragma once

// One-step GEC estimation: point estimate, implied-regression coefficient
// gamma_hat with curvature weights q_i = rho2(x_i' lambda_hat), the
// linearization variance sum w(w-1)(y - x'gamma)^2, the closed-form
// squared-loss cross-check, and Huber weight trimming with cross-validated
// bound selection.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "entrocal/dual_solver.hpp"

namespace entrocal {

struct GecEstimate {
  double total = 0.0;
  double mean = 0.0;
  Eigen::VectorXd gamma;
  double variance = 0.0;        // for the total; divide by N^2 for the mean
  double std_error = 0.0;       // sqrt(variance), total scale
  double std_error_mean = 0.0;  // std_error / N
  double population = 0.0;      // N, read off the intercept total
  CalibrationSolution solution;
  std::vector<std::string> warnings;
};

GecEstimate gec_estimate(const CalibrationProblem& problem,
                         const Eigen::VectorXd& y);

// GREG closed form: totals' beta with beta = (sum xx')^{-1} sum xy.
// Identical to squared-loss GEC.
double closed_form_greg(const Eigen::MatrixXd& design,
                        const Eigen::VectorXd& totals,
                        const Eigen::VectorXd& y);

// gamma = (sum q xx')^{-1} sum q xy with q_i = rho2(x_i' lambda_hat),
// through a truncated SVD (singular values below 1e-12 * s_max dropped).
Eigen::VectorXd gamma_hat(const Eigen::MatrixXd& design,
                          const Eigen::VectorXd& y,
                          const CalibrationSolution& solution,
                          const AnyEntropy& entropy,
                          std::vector<std::string>* warnings = nullptr);

// sum_i w_i (w_i - 1) (y_i - x_i' gamma)^2, evaluated exactly (possibly
// negative for squared-loss weights inside (0, 1)).
double variance_estimate(const Eigen::VectorXd& weights,
                         const Eigen::MatrixXd& design,
                         const Eigen::VectorXd& y,
                         const Eigen::VectorXd& gamma);

// gec_estimate for a huber:<M> problem, with the M > N/n advisory check.
GecEstimate trimmed_calibrate(const CalibrationProblem& problem,
                              const Eigen::VectorXd& y);

// K-fold cross-validation over candidate trim bounds, minimizing held-out
// sum (y - x' beta_M)^2; ties go to the largest bound (least trimming).
double select_trim_bound(const Eigen::MatrixXd& design,
                         const Eigen::VectorXd& totals,
                         const Eigen::VectorXd& y,
                         std::vector<double> candidate_bounds, int folds,
                         std::uint64_t seed,
                         const SolverControls& controls = {});

}  // namespace entrocal
