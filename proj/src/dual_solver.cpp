#include "entrocal/dual_solver.hpp"

#include <cmath>
#include <sstream>

namespace entrocal {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void validate(const CalibrationProblem& problem) {
  const auto n = problem.design.rows();
  const auto p = problem.design.cols();
  if (n < 1 || p < 1)
    throw ConfigError("calibration problem needs n >= 1 rows and p >= 1 "
                      "columns");
  if (problem.totals.size() != p)
    throw ConfigError("totals length does not match the design columns");
  if (!problem.design.allFinite() || !problem.totals.allFinite())
    throw ConfigError("design/totals contain non-finite entries");
  const auto& c = problem.controls;
  if (c.max_iter < 1 || !(c.grad_tol > 0.0) || !(c.step_shrink > 0.0) ||
      !(c.step_shrink < 1.0) || !(c.domain_margin > 0.0) ||
      !(c.domain_margin < 1.0) || !(c.ridge >= 0.0))
    throw ConfigError("invalid solver controls");
}

template <class E>
double objective_at(const E& entropy, const VectorXd& nu, double linear) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < nu.size(); ++i)
    acc += conjugate_value(entropy, nu[i]);
  return acc - linear;
}

// Largest t with nu + t*delta strictly inside the open interval.
double fraction_to_boundary(const VectorXd& nu, const VectorXd& delta,
                            const Interval& dom) {
  double t_max = kInf;
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    if (delta[i] > 0.0 && std::isfinite(dom.hi))
      t_max = std::min(t_max, (dom.hi - nu[i]) / delta[i]);
    else if (delta[i] < 0.0 && std::isfinite(dom.lo))
      t_max = std::min(t_max, (dom.lo - nu[i]) / delta[i]);
  }
  return t_max;
}

template <class E>
CalibrationSolution solve_impl(const E& entropy, const MatrixXd& design,
                               const VectorXd& totals,
                               const SolverControls& controls,
                               VectorXd lambda,
                               std::vector<std::string> warnings) {
  const auto n = design.rows();
  const auto p = design.cols();
  const Interval dom = dual_domain(entropy);
  const double scale = std::max(1.0, totals.lpNorm<Eigen::Infinity>());
  const double tol = controls.grad_tol * scale;

  VectorXd nu = design * lambda;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!dom.contains(nu[i]))
      throw DomainError("initial lambda places row " + std::to_string(i) +
                        " outside the dual domain");

  double objective = objective_at(entropy, nu, totals.dot(lambda));
  const double objective0 = objective;
  const double lambda0_norm =
      std::max(1.0, lambda.lpNorm<Eigen::Infinity>());

  CalibrationSolution out;
  out.warnings = std::move(warnings);

  VectorXd weights(n), q(n);
  double ridge = controls.ridge;
  bool ridge_warned = false;

  for (int iter = 0;; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i)
      weights[i] = weight_map(entropy, nu[i]);
    VectorXd grad = design.transpose() * weights - totals;

    if (grad.lpNorm<Eigen::Infinity>() <= tol) {
      out.lambda = lambda;
      out.weights = weights;
      out.residual = grad;
      out.iterations = iter;
      out.converged = true;
      out.objective = objective;
      return out;
    }
    if (iter >= controls.max_iter) {
      std::ostringstream os;
      os << "dual solver hit max_iter=" << controls.max_iter
         << " with residual " << grad.lpNorm<Eigen::Infinity>()
         << " (tol " << tol << ")";
      throw NonConvergence(os.str());
    }

    for (Eigen::Index i = 0; i < n; ++i)
      q[i] = curvature(entropy, nu[i]);
    MatrixXd hess = design.transpose() * q.asDiagonal() * design;
    if (ridge > 0.0) hess.diagonal().array() += ridge;

    Eigen::LDLT<MatrixXd> ldlt(hess);
    VectorXd dvec = ldlt.vectorD().cwiseAbs();
    const double dmax = dvec.maxCoeff();
    if (!(dmax > 0.0) || dvec.minCoeff() <= 1e-13 * dmax) {
      bool is_huber = false;
      if constexpr (std::is_same_v<E, EntropyFamily>)
        is_huber = entropy.kind == EntropyKind::HuberTrimmed;
      if (is_huber && ridge == 0.0) {
        // Many trimmed units zero out the curvature; retry regularized.
        ridge = 1e-8 * std::max(1.0, dmax);
        if (!ridge_warned) {
          out.warnings.push_back(
              "ClippedMajority: Huber curvature rank-deficient, "
              "continuing with ridge");
          ridge_warned = true;
        }
        hess.diagonal().array() += ridge;
        ldlt.compute(hess);
      } else {
        throw SingularHessian(
            "dual Hessian numerically rank-deficient (collinear "
            "calibration variables?)");
      }
    }

    VectorXd step = ldlt.solve(-grad);
    VectorXd delta = design * step;
    const double slope = grad.dot(step);

    double t = std::min(
        1.0, controls.domain_margin * fraction_to_boundary(nu, delta, dom));
    if (!(t > 0.0))
      throw NonConvergence("dual solver cannot move inside the domain");

    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      VectorXd nu_try = nu + t * delta;
      const double lin = totals.dot(lambda) + t * totals.dot(step);
      const double f_try = objective_at(entropy, nu_try, lin);
      if (std::isfinite(f_try) && f_try <= objective + 1e-4 * t * slope) {
        lambda += t * step;
        nu = std::move(nu_try);
        objective = f_try;
        accepted = true;
        break;
      }
      t *= controls.step_shrink;
    }
    if (!accepted)
      throw NonConvergence("dual line search failed to decrease the "
                           "objective");

    // Unbounded-below dual along a ray signals an infeasible constraint.
    if (lambda.lpNorm<Eigen::Infinity>() > 1e10 * lambda0_norm ||
        objective < -1e12 * std::max(1.0, std::abs(objective0)))
      throw Infeasible(
          "dual objective unbounded below: no weights in the entropy "
          "domain can satisfy the calibration constraint");
  }
}

}  // namespace

std::optional<VectorXd> intercept_direction(const MatrixXd& design) {
  const VectorXd ones = VectorXd::Ones(design.rows());
  VectorXd a = design.colPivHouseholderQr().solve(ones);
  if ((design * a - ones).lpNorm<Eigen::Infinity>() <= 1e-8) return a;
  return std::nullopt;
}

Eigen::VectorXd default_init(const CalibrationProblem& problem) {
  validate(problem);
  const auto a = intercept_direction(problem.design);
  if (!a)
    throw MissingIntercept(
        "no constant direction a with design*a = 1; cannot build the "
        "default initial point");
  const double population = problem.totals.dot(*a);
  double w0 = population / static_cast<double>(problem.design.rows());
  const Interval wd = weight_domain(problem.entropy);
  if (std::isfinite(wd.lo) && w0 <= wd.lo) w0 = wd.lo + 1e-3;
  if (std::isfinite(wd.hi) && w0 >= wd.hi)
    w0 = wd.hi - std::min(1e-3, 1e-3 * (wd.hi - wd.lo));
  return primal_gradient(problem.entropy, w0) * (*a);
}

double dual_objective(const CalibrationProblem& problem,
                      const Eigen::VectorXd& lambda) {
  validate(problem);
  if (lambda.size() != problem.design.cols())
    throw ConfigError("lambda length does not match the design columns");
  const VectorXd nu = problem.design * lambda;
  const Interval dom = dual_domain(problem.entropy);
  for (Eigen::Index i = 0; i < nu.size(); ++i)
    if (!dom.contains(nu[i]))
      throw DomainError("dual point leaves the domain at row " +
                        std::to_string(i));
  return std::visit(
      [&](const auto& e) {
        return objective_at(e, nu, problem.totals.dot(lambda));
      },
      problem.entropy);
}

CalibrationSolution solve_dual(const CalibrationProblem& problem,
                               const std::optional<Eigen::VectorXd>& init) {
  validate(problem);
  std::vector<std::string> warnings;

  const auto a = intercept_direction(problem.design);
  if (!a)
    warnings.push_back(
        "no intercept direction found: design*a = 1 has no solution to "
        "1e-8");

  // A Huber cap that cannot reach the population size is infeasible no
  // matter what lambda does.
  if (const auto* fam = std::get_if<EntropyFamily>(&problem.entropy);
      fam && fam->kind == EntropyKind::HuberTrimmed && a) {
    const double population = problem.totals.dot(*a);
    const double reach =
        fam->bound * static_cast<double>(problem.design.rows());
    if (std::abs(population) > reach)
      throw Infeasible("Huber cap M too small: n*M < |N|, the intercept "
                       "constraint cannot be met");
  }

  Eigen::VectorXd lambda0;
  if (init) {
    if (init->size() != problem.design.cols())
      throw ConfigError("init length does not match the design columns");
    lambda0 = *init;
  } else {
    lambda0 = default_init(problem);
  }

  return std::visit(
      [&](const auto& e) {
        return solve_impl(e, problem.design, problem.totals, problem.controls,
                          lambda0, warnings);
      },
      problem.entropy);
}

}  // namespace entrocal
