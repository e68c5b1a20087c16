#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dopd {

enum class Variant { one_point, two_point };

// Per-round scalar tuple (stepsize, regularization, shrinkage, exploration,
// codec scale).
struct RoundScalars {
  double alpha;
  double gamma;
  double xi;
  double delta;
  double s;
};

// Power-law parameter families for the two algorithm variants.
//
// one_point: alpha_t = alpha0 / t^theta1, gamma_t = gamma0 * t^theta2,
//            xi_t = 1 / t^theta3, delta_t = r / t^theta3,
//            s_t = s0 / t^theta4.
// two_point: alpha_t = alpha0 / t^theta1, gamma_t = gamma0 / alpha_t,
//            xi_t = alpha_t, delta_t = r * alpha_t, s_t = s0 / t^theta2.
//
// Schedules are evaluated at t + t_offset; the raw family gives xi_1 = 1,
// which would collapse the first shrunk set to a point.
struct ScheduleParams {
  Variant variant = Variant::one_point;
  double theta1 = 0.8;
  double theta2 = 0.1;  // s_t exponent for the two_point variant
  double theta3 = 0.3;  // unused by two_point
  double theta4 = 1.0;  // unused by two_point
  double alpha0 = 1.0;
  double gamma0 = 0.01;
  double s0 = 1.0;
  double r = 5.0;  // inner radius of the decision set
  int t_offset = 1;
};

RoundScalars schedule_at(const ScheduleParams& params, long t);

// Checks the exponent and gamma0 validity ranges. bound2 is F2 for the
// one_point variant and G2 for two_point; pass nullopt to downgrade the
// gamma0 range check to a skip.
std::vector<std::string> validate(const ScheduleParams& params,
                                  std::optional<double> bound2, int p);

// The balanced exponent choice (theta2, theta3) = (2 theta1 - 3/2,
// theta1 - 1/2), admissible for theta1 in (3/4, 5/6].
struct BalancedExponents {
  double theta2;
  double theta3;
};
std::optional<BalancedExponents> balanced_exponents(double theta1);

}  // namespace dopd
