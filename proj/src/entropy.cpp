#include "entrocal/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entrocal {

namespace {

[[noreturn]] void domain_error(const EntropyFamily& family, const char* what,
                               double value) {
  std::ostringstream os;
  os << to_token(family) << ": " << what << " " << value
     << " outside the valid domain";
  throw DomainError(os.str());
}

void check_dual(const EntropyFamily& family, double v) {
  if (!std::isfinite(v) || !dual_domain(family).contains(v))
    domain_error(family, "dual point", v);
}

}  // namespace

EntropyFamily EntropyFamily::renyi(double alpha) {
  // alpha <= 0 would make G(w) = w^(alpha+1)/(alpha+1) concave on w > 0,
  // so rho would not be convex on nu > 0.
  if (!(alpha > 0.0))
    throw DomainError("renyi: order alpha must be > 0, got " +
                      std::to_string(alpha));
  return {EntropyKind::Renyi, alpha, 0.0};
}

EntropyFamily EntropyFamily::huber(double bound) {
  if (!(bound > 0.0))
    throw DomainError("huber: trim bound M must be > 0, got " +
                      std::to_string(bound));
  return {EntropyKind::HuberTrimmed, 0.0, bound};
}

Interval dual_domain(const EntropyFamily& family) {
  switch (family.kind) {
    case EntropyKind::EmpiricalLikelihood:
      return {-kInf, 0.0};
    case EntropyKind::Hellinger:
      return {-kInf, 1.0};
    case EntropyKind::Renyi:
      // nu > 0 for every alpha; negative-nu extensions are rejected.
      return {0.0, kInf};
    default:
      return {};
  }
}

Interval weight_domain(const EntropyFamily& family) {
  switch (family.kind) {
    case EntropyKind::SquaredLoss:
      return {};
    case EntropyKind::ShiftedKL:
      return {1.0, kInf};
    case EntropyKind::HuberTrimmed:
      return {-family.bound, family.bound};
    default:
      // KL, EL, Hellinger, Renyi all live on w > 0.
      return {0.0, kInf};
  }
}

double entropy_value(const EntropyFamily& family, double w) {
  switch (family.kind) {
    case EntropyKind::SquaredLoss:
      if (!std::isfinite(w)) domain_error(family, "weight", w);
      return 0.5 * w * w;
    case EntropyKind::KullbackLeibler:
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return w * std::log(w);
    case EntropyKind::ShiftedKL:
      if (!(w > 1.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return (w - 1.0) * (std::log(w - 1.0) - 1.0);
    case EntropyKind::EmpiricalLikelihood:
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return -std::log(w);
    case EntropyKind::Hellinger: {
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      const double r = std::sqrt(w) - 1.0;
      return r * r;
    }
    case EntropyKind::Renyi:
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return std::pow(w, family.alpha + 1.0) / (family.alpha + 1.0);
    case EntropyKind::HuberTrimmed:
      // G is +inf beyond the cap; closed domain [-M, M].
      if (!(std::abs(w) <= family.bound) || !std::isfinite(w))
        domain_error(family, "weight", w);
      return 0.5 * w * w;
  }
  throw Error("entropy_value: unreachable");
}

double conjugate_value(const EntropyFamily& family, double v) {
  check_dual(family, v);
  switch (family.kind) {
    case EntropyKind::SquaredLoss:
      return 0.5 * v * v;
    case EntropyKind::KullbackLeibler:
      return std::exp(v - 1.0);
    case EntropyKind::ShiftedKL:
      return v + std::exp(v);
    case EntropyKind::EmpiricalLikelihood:
      return -1.0 - std::log(-v);
    case EntropyKind::Hellinger:
      return v / (1.0 - v);
    case EntropyKind::Renyi: {
      const double a = family.alpha;
      return a / (a + 1.0) * std::pow(v, (a + 1.0) / a);
    }
    case EntropyKind::HuberTrimmed: {
      const double m = family.bound;
      return std::abs(v) <= m ? 0.5 * v * v : m * (std::abs(v) - 0.5 * m);
    }
  }
  throw Error("conjugate_value: unreachable");
}

double weight_map(const EntropyFamily& family, double v) {
  check_dual(family, v);
  switch (family.kind) {
    case EntropyKind::SquaredLoss:
      return v;
    case EntropyKind::KullbackLeibler:
      return std::exp(v - 1.0);
    case EntropyKind::ShiftedKL:
      return 1.0 + std::exp(v);
    case EntropyKind::EmpiricalLikelihood:
      return -1.0 / v;
    case EntropyKind::Hellinger: {
      const double s = 1.0 - v;
      return 1.0 / (s * s);
    }
    case EntropyKind::Renyi:
      return std::pow(v, 1.0 / family.alpha);
    case EntropyKind::HuberTrimmed:
      // clip(v, -M, M): weight trimming at the bound.
      return std::clamp(v, -family.bound, family.bound);
  }
  throw Error("weight_map: unreachable");
}

double curvature(const EntropyFamily& family, double v) {
  check_dual(family, v);
  switch (family.kind) {
    case EntropyKind::SquaredLoss:
      return 1.0;
    case EntropyKind::KullbackLeibler:
      return std::exp(v - 1.0);
    case EntropyKind::ShiftedKL:
      return std::exp(v);
    case EntropyKind::EmpiricalLikelihood:
      return 1.0 / (v * v);
    case EntropyKind::Hellinger: {
      const double s = 1.0 - v;
      return 2.0 / (s * s * s);
    }
    case EntropyKind::Renyi: {
      const double a = family.alpha;
      return (1.0 / a) * std::pow(v, 1.0 / a - 1.0);
    }
    case EntropyKind::HuberTrimmed:
      return std::abs(v) <= family.bound ? 1.0 : 0.0;
  }
  throw Error("curvature: unreachable");
}

double primal_gradient(const EntropyFamily& family, double w) {
  switch (family.kind) {
    case EntropyKind::SquaredLoss:
      if (!std::isfinite(w)) domain_error(family, "weight", w);
      return w;
    case EntropyKind::KullbackLeibler:
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return std::log(w) + 1.0;
    case EntropyKind::ShiftedKL:
      if (!(w > 1.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return std::log(w - 1.0);
    case EntropyKind::EmpiricalLikelihood:
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return -1.0 / w;
    case EntropyKind::Hellinger:
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return 1.0 - 1.0 / std::sqrt(w);
    case EntropyKind::Renyi:
      if (!(w > 0.0) || !std::isfinite(w)) domain_error(family, "weight", w);
      return std::pow(w, family.alpha);
    case EntropyKind::HuberTrimmed:
      // g is defined on the interior only; at |w| = M every v >= g(M)
      // maps back to the cap.
      if (!(std::abs(w) < family.bound) || !std::isfinite(w))
        domain_error(family, "weight", w);
      return w;
  }
  throw Error("primal_gradient: unreachable");
}

EntropyFamily parse_entropy(const std::string& token) {
  if (token == "sl") return EntropyFamily::squared_loss();
  if (token == "kl") return EntropyFamily::kullback_leibler();
  if (token == "skl") return EntropyFamily::shifted_kl();
  if (token == "el") return EntropyFamily::empirical_likelihood();
  if (token == "hd") return EntropyFamily::hellinger();
  const auto colon = token.find(':');
  if (colon != std::string::npos) {
    const std::string head = token.substr(0, colon);
    const std::string arg = token.substr(colon + 1);
    try {
      if (head == "renyi") return EntropyFamily::renyi(std::stod(arg));
      if (head == "huber")
        return EntropyFamily::huber(arg == "inf" ? kInf : std::stod(arg));
    } catch (const std::logic_error&) {
      throw ConfigError("entropy token has a malformed argument: " + token);
    }
  }
  throw ConfigError("unknown entropy token: " + token);
}

std::string to_token(const EntropyFamily& family) {
  switch (family.kind) {
    case EntropyKind::SquaredLoss:
      return "sl";
    case EntropyKind::KullbackLeibler:
      return "kl";
    case EntropyKind::ShiftedKL:
      return "skl";
    case EntropyKind::EmpiricalLikelihood:
      return "el";
    case EntropyKind::Hellinger:
      return "hd";
    case EntropyKind::Renyi:
      return "renyi:" + std::to_string(family.alpha);
    case EntropyKind::HuberTrimmed:
      return family.bound == kInf ? "huber:inf"
                                  : "huber:" + std::to_string(family.bound);
  }
  return "?";
}

}  // namespace entrocal
