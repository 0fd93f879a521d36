#pragma once

// Runtime-polymorphic entropy: either a catalogue family or a link-induced
// one. Free functions dispatch via std::visit so the solver treats both
// uniformly.

#include <string>
#include <variant>

#include "entrocal/entropy.hpp"
#include "entrocal/link.hpp"

namespace entrocal {

using AnyEntropy = std::variant<EntropyFamily, LinkEntropy>;

inline double conjugate_value(const AnyEntropy& e, double v) {
  return std::visit([v](const auto& x) { return conjugate_value(x, v); }, e);
}
inline double weight_map(const AnyEntropy& e, double v) {
  return std::visit([v](const auto& x) { return weight_map(x, v); }, e);
}
inline double curvature(const AnyEntropy& e, double v) {
  return std::visit([v](const auto& x) { return curvature(x, v); }, e);
}
inline double primal_gradient(const AnyEntropy& e, double w) {
  return std::visit([w](const auto& x) { return primal_gradient(x, w); }, e);
}
inline Interval dual_domain(const AnyEntropy& e) {
  return std::visit([](const auto& x) { return dual_domain(x); }, e);
}
inline Interval weight_domain(const AnyEntropy& e) {
  return std::visit([](const auto& x) { return weight_domain(x); }, e);
}
inline std::string to_token(const AnyEntropy& e) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, LinkEntropy>)
          return "link:" + to_token(x.link);
        else
          return to_token(x);
      },
      e);
}

}  // namespace entrocal
