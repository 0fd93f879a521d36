#pragma once

// Two-step debiased calibration. Step 1 fits propensity weights through a
// link-induced entropy on the PS covariates x1. Step 2 calibrates on the
// outcome-model covariates x2 plus the debiasing column g2(w1), whose
// population total transfers the PS model's validity to the final weights.

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "entrocal/calibrate.hpp"

namespace entrocal {

// Where the debiasing total sum_{i=1}^N g2(w1_i) comes from: unit-level
// population covariates (exact) or a design-weighted probability reference
// sample.
struct DebiasSource {
  enum class Mode { Exact, Reference };
  Mode mode = Mode::Exact;
  Eigen::MatrixXd x1;       // population or reference rows over x1
  Eigen::VectorXd weights;  // design weights, Reference mode only
};

struct TwoStepSpec {
  std::vector<Eigen::Index> ps_cols;  // x1 column indices into the design
  std::vector<Eigen::Index> or_cols;  // x2 column indices (may overlap x1)
  LinkFunction link = LinkFunction::logistic();
  EntropyFamily entropy2 = EntropyFamily::shifted_kl();
  Eigen::VectorXd totals1;
  Eigen::VectorXd totals2;
  DebiasSource debias;
  SolverControls controls;
};

struct TwoStepResult {
  Eigen::VectorXd phi;            // step-1 dual
  Eigen::VectorXd step1_weights;  // w1 = 1/pi_tilde(x1' phi)
  Eigen::VectorXd step2_weights;
  Eigen::MatrixXd z;              // n x (p2+1): (x2', g2(w1))
  Eigen::VectorXd gamma1;
  Eigen::VectorXd gamma2;
  double total = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  double std_error_mean = 0.0;
  double population = 0.0;
  double debias_total = 0.0;
  DebiasSource::Mode debias_mode = DebiasSource::Mode::Exact;
  CalibrationSolution step2_solution;
  std::vector<std::string> warnings;
};

// Step-1 propensity calibration: returns (phi_hat, w1) with
// sum w1 x1 = totals1.
std::pair<Eigen::VectorXd, Eigen::VectorXd> step1_weights(
    const Eigen::MatrixXd& design1, const Eigen::VectorXd& totals1,
    const LinkFunction& link, const SolverControls& controls = {},
    std::vector<std::string>* warnings = nullptr);

// g2(w1) elementwise; throws DomainError naming the offending units when
// some w1 leaves entropy2's weight domain (e.g. propensities >= 1 under
// ShiftedKL).
Eigen::VectorXd debias_regressor(const Eigen::VectorXd& step1_weights,
                                 const EntropyFamily& entropy2);

TwoStepResult two_step_estimate(const Eigen::MatrixXd& design,
                                const Eigen::VectorXd& y,
                                const TwoStepSpec& spec);

struct Theorem2Variance {
  Eigen::VectorXd gamma1;
  Eigen::VectorXd gamma2;
  double variance = 0.0;
  std::vector<std::string> warnings;
};

// Stacked weighted least squares of y on (x1, z) with weights
// q_i = rho2_2(z_i' lambda_hat), resolved by the minimum-norm
// pseudo-inverse (the overlap of x1 and x2 makes the stacked Gram
// singular); variance = sum w2(w2-1)(y - x1'g1 - z'g2)^2.
Theorem2Variance theorem2_variance(const Eigen::MatrixXd& design1,
                                   const Eigen::MatrixXd& z,
                                   const Eigen::VectorXd& y,
                                   const CalibrationSolution& step2,
                                   const EntropyFamily& entropy2);

}  // namespace entrocal
