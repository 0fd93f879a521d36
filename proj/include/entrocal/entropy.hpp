#pragma once

// Generalized entropy functions G(w), their convex conjugates rho(v), and
// the derivative maps used by the dual calibration solver:
//
//   g(w)      = dG/dw          (primal gradient)
//   rho1(v)   = drho/dv        (weight map, the inverse of g)
//   rho2(v)   = d2rho/dv2      (curvature)
//
// All functions are total on the stated open domains and throw DomainError
// outside them.

#include <limits>
#include <string>

#include "entrocal/errors.hpp"

namespace entrocal {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Open interval (lo, hi).
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool contains(double v) const { return v > lo && v < hi; }
};

enum class EntropyKind {
  SquaredLoss,
  KullbackLeibler,
  ShiftedKL,
  EmpiricalLikelihood,
  Hellinger,
  Renyi,
  HuberTrimmed,
};

// A member of the generalized entropy catalogue. Immutable after
// construction; safe to share across threads.
struct EntropyFamily {
  EntropyKind kind = EntropyKind::SquaredLoss;
  double alpha = 0.0;  // Renyi order, > 0
  double bound = 0.0;  // Huber trim bound M, > 0

  static EntropyFamily squared_loss() { return {EntropyKind::SquaredLoss}; }
  static EntropyFamily kullback_leibler() {
    return {EntropyKind::KullbackLeibler};
  }
  static EntropyFamily shifted_kl() { return {EntropyKind::ShiftedKL}; }
  static EntropyFamily empirical_likelihood() {
    return {EntropyKind::EmpiricalLikelihood};
  }
  static EntropyFamily hellinger() { return {EntropyKind::Hellinger}; }
  static EntropyFamily renyi(double alpha);
  static EntropyFamily huber(double bound);
};

double entropy_value(const EntropyFamily& family, double w);
double conjugate_value(const EntropyFamily& family, double v);
double weight_map(const EntropyFamily& family, double v);
double curvature(const EntropyFamily& family, double v);
double primal_gradient(const EntropyFamily& family, double w);
Interval dual_domain(const EntropyFamily& family);
Interval weight_domain(const EntropyFamily& family);

// Config/CLI token: "sl", "kl", "skl", "el", "hd", "renyi:<alpha>",
// "huber:<M>" ("huber:inf" disables the cap).
EntropyFamily parse_entropy(const std::string& token);
std::string to_token(const EntropyFamily& family);

}  // namespace entrocal
