#include "dopd/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace dopd {

RoundScalars schedule_at(const ScheduleParams& params, long t) {
  if (t < 1) throw std::invalid_argument("schedule_at: t must be >= 1");
  const double tt = static_cast<double>(t + params.t_offset);
  RoundScalars sc{};
  sc.alpha = params.alpha0 / std::pow(tt, params.theta1);
  if (params.variant == Variant::one_point) {
    sc.gamma = params.gamma0 * std::pow(tt, params.theta2);
    sc.xi = std::pow(tt, -params.theta3);
    sc.delta = params.r * sc.xi;
    sc.s = params.s0 / std::pow(tt, params.theta4);
  } else {
    sc.gamma = params.gamma0 / sc.alpha;
    sc.xi = sc.alpha;
    sc.delta = params.r * sc.alpha;
    sc.s = params.s0 / std::pow(tt, params.theta2);
  }
  return sc;
}

std::vector<std::string> validate(const ScheduleParams& params,
                                  std::optional<double> bound2, int p) {
  std::vector<std::string> issues;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) issues.push_back(msg);
  };

  require(params.alpha0 > 0.0, "alpha0 must be positive");
  require(params.gamma0 > 0.0, "gamma0 must be positive");
  require(params.s0 > 0.0, "s0 must be positive");
  require(params.r > 0.0, "r must be positive");
  require(params.theta1 > 0.0 && params.theta1 < 1.0, "theta1 must be in (0,1)");

  if (params.variant == Variant::one_point) {
    require(params.theta2 > 0.0 && params.theta2 < params.theta1 / 3.0,
            "theta2 must be in (0, theta1/3)");
    require(params.theta3 > params.theta2 &&
                params.theta3 <= (params.theta1 - params.theta2) / 2.0,
            "theta3 must be in (theta2, (theta1 - theta2)/2]");
    require(params.theta4 >= 1.0, "theta4 must be >= 1");
    if (bound2) {
      const double cap =
          params.r * params.r / (2.0 * p * p * (*bound2) * (*bound2));
      require(params.gamma0 <= cap,
              "gamma0 exceeds r^2 / (2 p^2 F2^2) = " + std::to_string(cap));
    }
  } else {
    require(params.theta2 >= 1.0, "theta2 (scale exponent) must be >= 1");
    if (bound2) {
      const double cap =
          1.0 / (4.0 * (static_cast<double>(p) * p + 1.0) * (*bound2) * (*bound2));
      require(params.gamma0 <= cap,
              "gamma0 exceeds 1 / (4 (p^2+1) G2^2) = " + std::to_string(cap));
    }
    // xi_t = alpha_t must lie in (0, 1) from the first evaluated round.
    const double first = params.alpha0 /
                         std::pow(1.0 + params.t_offset, params.theta1);
    require(first < 1.0, "alpha at the first round must be < 1 (xi_t = alpha_t)");
  }
  return issues;
}

std::optional<BalancedExponents> balanced_exponents(double theta1) {
  if (theta1 <= 0.75 || theta1 > 5.0 / 6.0) return std::nullopt;
  return BalancedExponents{2.0 * theta1 - 1.5, theta1 - 0.5};
}

}  // namespace dopd
