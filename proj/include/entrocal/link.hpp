#pragma once

// Inverse-link functions pi(.) for propensity modeling and the entropies
// they induce. After orientation is resolved, pi_tilde is decreasing so
// that rho1(v) = 1/pi_tilde(v) is increasing, which makes the induced
// conjugate rho convex. The dual solver only ever needs rho1 and rho2;
// rho itself is closed-form where the entropy has one and numeric
// quadrature (anchored at rho(0) = 0) otherwise.

#include <string>

#include "entrocal/entropy.hpp"

namespace entrocal {

enum class LinkKind {
  Logistic,
  Log,
  Identity,
  Probit,
  ComplementaryLogLog,
  Cauchy,
  Power,
};

// Which direction the user's pi(v) runs. The solver works with
// pi_tilde(v) = pi(v) for Decreasing links and pi(-v) for Increasing ones.
enum class LinkOrientation { Decreasing, Increasing };

struct LinkFunction {
  LinkKind kind = LinkKind::Logistic;
  double alpha = 0.0;  // Power order, != 0 and != -1
  LinkOrientation orientation = LinkOrientation::Increasing;

  static LinkFunction logistic() { return {LinkKind::Logistic}; }
  static LinkFunction log() { return {LinkKind::Log}; }
  static LinkFunction identity() { return {LinkKind::Identity}; }
  static LinkFunction probit() { return {LinkKind::Probit}; }
  static LinkFunction cloglog() { return {LinkKind::ComplementaryLogLog}; }
  static LinkFunction cauchy() { return {LinkKind::Cauchy}; }
  static LinkFunction power(double alpha);
};

// Entropy induced by a link through rho1(v) = 1/pi_tilde(v). Exposes the
// same free-function surface as EntropyFamily, so the dual solver treats
// both uniformly.
struct LinkEntropy {
  LinkFunction link;
};

// Validates the orientation (1/pi_tilde must be increasing) and returns
// the induced entropy. Throws InvalidLink otherwise.
LinkEntropy link_induced_entropy(const LinkFunction& link);

// pi_tilde(v), the orientation-resolved decreasing inverse link.
double pi_tilde(const LinkEntropy& entropy, double v);

double conjugate_value(const LinkEntropy& entropy, double v);
double weight_map(const LinkEntropy& entropy, double v);
double curvature(const LinkEntropy& entropy, double v);
double primal_gradient(const LinkEntropy& entropy, double w);
Interval dual_domain(const LinkEntropy& entropy);
Interval weight_domain(const LinkEntropy& entropy);

// Tokens: "logit", "log", "identity", "probit", "cloglog", "cauchy",
// "power:<alpha>".
LinkFunction parse_link(const std::string& token);
std::string to_token(const LinkFunction& link);

// Standard normal CDF/quantile, used by the probit link.
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace entrocal
