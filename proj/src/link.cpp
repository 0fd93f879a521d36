#include "entrocal/link.hpp"

#include <cmath>
#include <sstream>

namespace entrocal {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void domain_error(const LinkEntropy& e, const char* what,
                               double value) {
  std::ostringstream os;
  os << to_token(e.link) << ": " << what << " " << value
     << " outside the valid domain";
  throw DomainError(os.str());
}

void check_dual(const LinkEntropy& e, double v) {
  if (!std::isfinite(v) || !dual_domain(e).contains(v))
    domain_error(e, "dual point", v);
}

// True monotone direction of the familiar presentation of each link.
LinkOrientation natural_orientation(LinkKind kind, double alpha) {
  if (kind == LinkKind::Power)
    return alpha > 0.0 ? LinkOrientation::Decreasing
                       : LinkOrientation::Increasing;
  return LinkOrientation::Increasing;
}

// Adaptive Simpson of rho1 on [a, b]; used only for the probit, cloglog
// and Cauchy conjugates, whose entropies Table-style closed forms lack.
double simpson(const LinkEntropy& e, double a, double m, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = weight_map(e, lm), frm = weight_map(e, rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double accept = 15.0 * std::max(tol, 1e-13 * std::abs(left + right));
  if (depth <= 0 || std::abs(delta) <= accept)
    return left + right + delta / 15.0;
  return simpson(e, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(e, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integral_of_weight_map(const LinkEntropy& e, double v) {
  if (v == 0.0) return 0.0;
  const double a = std::min(0.0, v), b = std::max(0.0, v);
  const double m = 0.5 * (a + b);
  const double fa = weight_map(e, a), fm = weight_map(e, m),
               fb = weight_map(e, b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double r =
      simpson(e, a, m, b, fa, fm, fb, whole, 1e-13 * (1.0 + b - a), 28);
  return v > 0.0 ? r : -r;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("normal_quantile: p must lie in (0,1), got " +
                      std::to_string(p));
  // Acklam's rational approximation, polished by one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
          c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

LinkFunction LinkFunction::power(double alpha) {
  if (alpha == 0.0 || alpha == -1.0)
    throw InvalidLink("power link: order alpha must differ from 0 and -1");
  return {LinkKind::Power, alpha, natural_orientation(LinkKind::Power, alpha)};
}

LinkEntropy link_induced_entropy(const LinkFunction& link) {
  if (link.kind == LinkKind::Power && (link.alpha == 0.0 || link.alpha == -1.0))
    throw InvalidLink("power link: order alpha must differ from 0 and -1");
  if (link.orientation != natural_orientation(link.kind, link.alpha))
    throw InvalidLink("link " + to_token(link) +
                      ": 1/pi_tilde is not increasing under the declared "
                      "orientation");
  return LinkEntropy{link};
}

Interval dual_domain(const LinkEntropy& e) {
  switch (e.link.kind) {
    case LinkKind::Identity:
      return {-kInf, 0.0};
    case LinkKind::Power:
      return e.link.alpha > 0.0 ? Interval{0.0, kInf} : Interval{-kInf, 0.0};
    default:
      return {};
  }
}

Interval weight_domain(const LinkEntropy& e) {
  switch (e.link.kind) {
    case LinkKind::Log:
    case LinkKind::Identity:
    case LinkKind::Power:
      return {0.0, kInf};
    default:
      // pi_tilde < 1, so the weights exceed 1.
      return {1.0, kInf};
  }
}

double pi_tilde(const LinkEntropy& e, double v) {
  check_dual(e, v);
  switch (e.link.kind) {
    case LinkKind::Logistic:
      return 1.0 / (1.0 + std::exp(v));
    case LinkKind::Log:
      return std::exp(-v);
    case LinkKind::Identity:
      return -v;
    case LinkKind::Probit:
      return normal_cdf(-v);
    case LinkKind::ComplementaryLogLog:
      return -std::expm1(-std::exp(-v));
    case LinkKind::Cauchy:
      return 0.5 - std::atan(v) / kPi;
    case LinkKind::Power:
      return std::pow(std::abs(v), -1.0 / e.link.alpha);
  }
  throw Error("pi_tilde: unreachable");
}

double weight_map(const LinkEntropy& e, double v) {
  check_dual(e, v);
  switch (e.link.kind) {
    case LinkKind::Logistic:
      return 1.0 + std::exp(v);
    case LinkKind::Log:
      return std::exp(v);
    case LinkKind::Identity:
      return -1.0 / v;
    case LinkKind::Power:
      return std::pow(std::abs(v), 1.0 / e.link.alpha);
    default:
      return 1.0 / pi_tilde(e, v);
  }
}

double curvature(const LinkEntropy& e, double v) {
  check_dual(e, v);
  switch (e.link.kind) {
    case LinkKind::Logistic:
      return std::exp(v);
    case LinkKind::Log:
      return std::exp(v);
    case LinkKind::Identity:
      return 1.0 / (v * v);
    case LinkKind::Probit: {
      const double p = normal_cdf(-v);
      const double phi = std::exp(-0.5 * v * v) / std::sqrt(2.0 * kPi);
      return phi / (p * p);
    }
    case LinkKind::ComplementaryLogLog: {
      const double u = std::exp(-v);
      const double p = -std::expm1(-u);
      return u * std::exp(-u) / (p * p);
    }
    case LinkKind::Cauchy: {
      const double p = 0.5 - std::atan(v) / kPi;
      return 1.0 / (kPi * (1.0 + v * v) * p * p);
    }
    case LinkKind::Power: {
      const double a = e.link.alpha;
      return std::abs(1.0 / a) * std::pow(std::abs(v), 1.0 / a - 1.0);
    }
  }
  throw Error("curvature: unreachable");
}

double conjugate_value(const LinkEntropy& e, double v) {
  check_dual(e, v);
  switch (e.link.kind) {
    case LinkKind::Logistic:
      return v + std::exp(v);
    case LinkKind::Log:
      return std::exp(v);
    case LinkKind::Identity:
      return -1.0 - std::log(-v);
    case LinkKind::Power: {
      const double a = e.link.alpha;
      const double r = a / (a + 1.0) * std::pow(std::abs(v), (a + 1.0) / a);
      return a > 0.0 ? r : -r;
    }
    default:
      return integral_of_weight_map(e, v);
  }
}

double primal_gradient(const LinkEntropy& e, double w) {
  if (!std::isfinite(w) || !weight_domain(e).contains(w))
    domain_error(e, "weight", w);
  switch (e.link.kind) {
    case LinkKind::Logistic:
      return std::log(w - 1.0);
    case LinkKind::Log:
      return std::log(w);
    case LinkKind::Identity:
      return -1.0 / w;
    case LinkKind::Probit:
      return -normal_quantile(1.0 / w);
    case LinkKind::ComplementaryLogLog:
      return -std::log(-std::log1p(-1.0 / w));
    case LinkKind::Cauchy:
      return std::tan(kPi * (0.5 - 1.0 / w));
    case LinkKind::Power: {
      const double a = e.link.alpha;
      const double r = std::pow(w, a);
      return a > 0.0 ? r : -r;
    }
  }
  throw Error("primal_gradient: unreachable");
}

LinkFunction parse_link(const std::string& token) {
  if (token == "logit") return LinkFunction::logistic();
  if (token == "log") return LinkFunction::log();
  if (token == "identity") return LinkFunction::identity();
  if (token == "probit") return LinkFunction::probit();
  if (token == "cloglog") return LinkFunction::cloglog();
  if (token == "cauchy") return LinkFunction::cauchy();
  const auto colon = token.find(':');
  if (colon != std::string::npos && token.substr(0, colon) == "power") {
    try {
      return LinkFunction::power(std::stod(token.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw ConfigError("link token has a malformed argument: " + token);
    }
  }
  throw ConfigError("unknown link token: " + token);
}

std::string to_token(const LinkFunction& link) {
  switch (link.kind) {
    case LinkKind::Logistic:
      return "logit";
    case LinkKind::Log:
      return "log";
    case LinkKind::Identity:
      return "identity";
    case LinkKind::Probit:
      return "probit";
    case LinkKind::ComplementaryLogLog:
      return "cloglog";
    case LinkKind::Cauchy:
      return "cauchy";
    case LinkKind::Power:
      return "power:" + std::to_string(link.alpha);
  }
  return "?";
}

}  // namespace entrocal
