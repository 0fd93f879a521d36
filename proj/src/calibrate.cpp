#include "entrocal/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace entrocal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Minimum-norm weighted least squares via truncated SVD.
VectorXd weighted_lsq(const MatrixXd& design, const VectorXd& y,
                      const VectorXd& q, bool* rank_deficient) {
  const VectorXd sq = q.cwiseMax(0.0).cwiseSqrt();
  const MatrixXd a = sq.asDiagonal() * design;
  const VectorXd b = sq.cwiseProduct(y);
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  if (!(smax > 0.0) || !std::isfinite(smax))
    throw SingularGram("weighted Gram matrix has no usable singular values");
  const double cut = 1e-12 * smax;
  VectorXd inv = VectorXd::Zero(sv.size());
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > cut) {
      inv[k] = 1.0 / sv[k];
      ++rank;
    }
  if (rank_deficient) *rank_deficient = rank < design.cols();
  return svd.matrixV() * inv.asDiagonal() *
         (svd.matrixU().transpose() * b);
}

}  // namespace

Eigen::VectorXd gamma_hat(const MatrixXd& design, const VectorXd& y,
                          const CalibrationSolution& solution,
                          const AnyEntropy& entropy,
                          std::vector<std::string>* warnings) {
  if (design.rows() != y.size() || design.cols() != solution.lambda.size())
    throw ConfigError("gamma_hat: dimension mismatch");
  const VectorXd nu = design * solution.lambda;
  VectorXd q(nu.size());
  for (Eigen::Index i = 0; i < nu.size(); ++i)
    q[i] = curvature(entropy, nu[i]);
  bool deficient = false;
  VectorXd gamma = weighted_lsq(design, y, q, &deficient);
  if (deficient && warnings)
    warnings->push_back(
        "gamma_hat: weighted Gram rank-deficient, minimum-norm "
        "pseudo-inverse used");
  return gamma;
}

double variance_estimate(const VectorXd& weights, const MatrixXd& design,
                         const VectorXd& y, const VectorXd& gamma) {
  if (weights.size() != y.size() || design.rows() != y.size() ||
      design.cols() != gamma.size())
    throw ConfigError("variance_estimate: dimension mismatch");
  const VectorXd resid = y - design * gamma;
  return (weights.array() * (weights.array() - 1.0) *
          resid.array().square())
      .sum();
}

GecEstimate gec_estimate(const CalibrationProblem& problem,
                         const VectorXd& y) {
  if (y.size() != problem.design.rows())
    throw ConfigError("gec_estimate: y length does not match the design");
  if (!y.allFinite())
    throw ConfigError("gec_estimate: y contains non-finite values");

  GecEstimate est;
  est.solution = solve_dual(problem);
  est.warnings = est.solution.warnings;
  est.total = est.solution.weights.dot(y);

  if (const auto a = intercept_direction(problem.design)) {
    est.population = problem.totals.dot(*a);
  } else {
    est.population = est.solution.weights.sum();
    est.warnings.push_back(
        "no intercept direction: using the weight sum as the population "
        "size");
  }

  est.gamma = gamma_hat(problem.design, y, est.solution, problem.entropy,
                        &est.warnings);
  est.variance =
      variance_estimate(est.solution.weights, problem.design, y, est.gamma);
  if (est.variance < 0.0) {
    est.warnings.push_back(
        "NegativeVariance: sum w(w-1)e^2 < 0, variance floored at 0");
    est.variance = 0.0;
  }
  est.mean = est.total / est.population;
  est.std_error = std::sqrt(est.variance);
  est.std_error_mean = est.std_error / est.population;
  return est;
}

double closed_form_greg(const MatrixXd& design, const VectorXd& totals,
                        const VectorXd& y) {
  if (design.rows() != y.size() || design.cols() != totals.size())
    throw ConfigError("closed_form_greg: dimension mismatch");
  const MatrixXd gram = design.transpose() * design;
  Eigen::LDLT<MatrixXd> ldlt(gram);
  const VectorXd d = ldlt.vectorD().cwiseAbs();
  if (!(d.maxCoeff() > 0.0) || d.minCoeff() <= 1e-13 * d.maxCoeff())
    throw SingularGram("closed_form_greg: sum xx' is singular");
  const VectorXd beta = ldlt.solve(design.transpose() * y);
  return totals.dot(beta);
}

GecEstimate trimmed_calibrate(const CalibrationProblem& problem,
                              const VectorXd& y) {
  const auto* family = std::get_if<EntropyFamily>(&problem.entropy);
  if (!family || family->kind != EntropyKind::HuberTrimmed)
    throw ConfigError("trimmed_calibrate requires a huber:<M> entropy");

  std::vector<std::string> pre;
  if (const auto a = intercept_direction(problem.design)) {
    const double base_weight =
        problem.totals.dot(*a) / static_cast<double>(problem.design.rows());
    if (family->bound <= base_weight) {
      std::ostringstream os;
      os << "trim bound M=" << family->bound << " <= N/n=" << base_weight
         << "; M > N/n is recommended";
      pre.push_back(os.str());
    }
  }

  GecEstimate est = gec_estimate(problem, y);
  est.warnings.insert(est.warnings.begin(), pre.begin(), pre.end());
  return est;
}

double select_trim_bound(const MatrixXd& design, const VectorXd& totals,
                         const VectorXd& y,
                         std::vector<double> candidate_bounds, int folds,
                         std::uint64_t seed, const SolverControls& controls) {
  const auto n = design.rows();
  if (folds < 2) throw ConfigError("select_trim_bound: folds must be >= 2");
  if (folds > n) throw ConfigError("select_trim_bound: folds exceed n");
  if (candidate_bounds.empty())
    throw ConfigError("select_trim_bound: no candidate bounds");
  for (double m : candidate_bounds)
    if (!(m > 0.0))
      throw ConfigError("select_trim_bound: candidate bounds must be > 0");
  std::sort(candidate_bounds.begin(), candidate_bounds.end());

  // Deterministic seeded shuffle, then round-robin fold assignment.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<int> fold_of(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i)
    fold_of[static_cast<std::size_t>(order[i])] = static_cast<int>(i) % folds;

  double best_cv = kInf;
  double best_bound = 0.0;
  bool any_ok = false;

  for (double bound : candidate_bounds) {
    double cv = 0.0;
    bool ok = true;
    for (int k = 0; k < folds && ok; ++k) {
      std::vector<Eigen::Index> train, test;
      for (Eigen::Index i = 0; i < n; ++i)
        (fold_of[static_cast<std::size_t>(i)] == k ? test : train)
            .push_back(i);
      MatrixXd xtr(train.size(), design.cols());
      VectorXd ytr(train.size());
      for (std::size_t r = 0; r < train.size(); ++r) {
        xtr.row(static_cast<Eigen::Index>(r)) = design.row(train[r]);
        ytr[static_cast<Eigen::Index>(r)] = y[train[r]];
      }
      try {
        CalibrationProblem sub{xtr, totals, EntropyFamily::huber(bound),
                               controls};
        const CalibrationSolution sol = solve_dual(sub);
        const VectorXd beta =
            gamma_hat(xtr, ytr, sol, sub.entropy, nullptr);
        for (Eigen::Index i : test) {
          const double r = y[i] - design.row(i).dot(beta);
          cv += r * r;
        }
      } catch (const Error&) {
        ok = false;
      }
    }
    // <= so that, ascending, equal scores resolve to the largest bound.
    if (ok && cv <= best_cv) {
      best_cv = cv;
      best_bound = bound;
      any_ok = true;
    }
  }
  if (!any_ok)
    throw AllInfeasible(
        "select_trim_bound: every candidate bound failed cross-validation");
  return best_bound;
}

}  // namespace entrocal
