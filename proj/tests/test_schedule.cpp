#include <doctest.h>

#include <cmath>

#include "dopd/schedule.hpp"

using namespace dopd;

TEST_CASE("one point family evaluates the power laws") {
  ScheduleParams p;
  p.variant = Variant::one_point;
  p.theta1 = 0.8;
  p.theta2 = 0.1;
  p.theta3 = 0.3;
  p.theta4 = 1.0;
  p.alpha0 = 1.0;
  p.gamma0 = 0.01;
  p.s0 = 1.0;
  p.r = 5.0;
  p.t_offset = 0;  // evaluate the raw family
  const auto sc = schedule_at(p, 16);
  CHECK(sc.alpha == doctest::Approx(std::pow(16.0, -0.8)).epsilon(1e-12));
  CHECK(sc.alpha == doctest::Approx(0.10882).epsilon(1e-4));
  CHECK(sc.gamma == doctest::Approx(0.013195).epsilon(1e-4));
  CHECK(sc.xi == doctest::Approx(0.43528).epsilon(1e-4));
  CHECK(sc.delta == doctest::Approx(2.1764).epsilon(1e-4));
  CHECK(sc.s == doctest::Approx(1.0 / 16).epsilon(1e-12));
}

TEST_CASE("two point family couples everything to the stepsize") {
  ScheduleParams p;
  p.variant = Variant::two_point;
  p.theta1 = 0.5;
  p.theta2 = 1.0;
  p.alpha0 = 1.0;
  p.gamma0 = 0.05;
  p.r = 5.0;
  p.t_offset = 0;
  const auto sc = schedule_at(p, 4);
  CHECK(sc.alpha == doctest::Approx(0.5));
  CHECK(sc.gamma == doctest::Approx(0.1));
  CHECK(sc.xi == doctest::Approx(0.5));
  CHECK(sc.delta == doctest::Approx(2.5));
  CHECK(sc.s == doctest::Approx(0.25));
}

TEST_CASE("offset keeps the first shrinkage below one") {
  ScheduleParams p;
  p.variant = Variant::one_point;
  p.theta3 = 0.3;
  p.t_offset = 0;
  CHECK(schedule_at(p, 1).xi == doctest::Approx(1.0));
  p.t_offset = 1;  // default evaluation point t + 1
  CHECK(schedule_at(p, 1).xi < 1.0);
  CHECK(schedule_at(p, 1).delta <= p.r * schedule_at(p, 1).xi + 1e-12);
}

TEST_CASE("balanced exponents follow the closed form") {
  const auto be = balanced_exponents(0.8);
  REQUIRE(be.has_value());
  CHECK(be->theta2 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(be->theta3 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK_FALSE(balanced_exponents(0.7).has_value());
  CHECK_FALSE(balanced_exponents(0.9).has_value());
  CHECK(balanced_exponents(5.0 / 6.0).has_value());
}

TEST_CASE("balanced choice passes every range check") {
  ScheduleParams p;
  p.variant = Variant::one_point;
  p.theta1 = 0.8;
  const auto be = balanced_exponents(p.theta1);
  p.theta2 = be->theta2;
  p.theta3 = be->theta3;
  p.theta4 = 1.0;
  p.gamma0 = 0.001;
  CHECK(p.theta2 < p.theta1 / 3.0);
  CHECK(p.theta3 <= (p.theta1 - p.theta2) / 2.0 + 1e-12);
  CHECK(validate(p, 20.0, 2).empty());
}

TEST_CASE("exponent violations are reported") {
  ScheduleParams p;
  p.variant = Variant::one_point;
  p.theta1 = 0.8;
  p.theta2 = 0.3;  // above theta1 / 3
  p.theta3 = 0.25; // must exceed theta2, also violated
  p.gamma0 = 0.001;
  CHECK_FALSE(validate(p, 20.0, 2).empty());
}

TEST_CASE("gamma0 cap is closed at the upper end") {
  ScheduleParams p;
  p.variant = Variant::two_point;
  p.theta1 = 0.5;
  p.theta2 = 1.0;
  p.alpha0 = 0.5;
  const double G2 = 4.0;
  const double cap = 1.0 / (4.0 * (2.0 * 2.0 + 1.0) * G2 * G2);
  p.gamma0 = cap;
  CHECK(validate(p, G2, 2).empty());
  p.gamma0 = cap * 1.0001;
  CHECK_FALSE(validate(p, G2, 2).empty());
}

TEST_CASE("one point gamma0 cap uses the value bound") {
  ScheduleParams p;
  p.variant = Variant::one_point;
  p.theta1 = 0.8;
  p.theta2 = 0.1;
  p.theta3 = 0.3;
  const double F2 = 10.0;
  const double cap = p.r * p.r / (2.0 * 2.0 * 2.0 * F2 * F2);  // r^2/(2 p^2 F2^2)
  p.gamma0 = cap;
  CHECK(validate(p, F2, 2).empty());
  p.gamma0 = cap * 1.0001;
  CHECK_FALSE(validate(p, F2, 2).empty());
  p.gamma0 = cap;
  CHECK(validate(p, std::nullopt, 2).empty());  // unknown bound: check skipped
}

TEST_CASE("monotone decay of the schedule members") {
  ScheduleParams p;
  p.variant = Variant::one_point;
  p.theta1 = 0.8;
  p.theta2 = 0.1;
  p.theta3 = 0.3;
  double prev_alpha = 1e18, prev_xi = 1e18, prev_s = 1e18;
  for (long t = 1; t <= 100; ++t) {
    const auto sc = schedule_at(p, t);
    CHECK(sc.alpha < prev_alpha);
    CHECK(sc.xi < prev_xi);
    CHECK(sc.s < prev_s);
    CHECK(sc.delta <= p.r * sc.xi + 1e-12);
    prev_alpha = sc.alpha;
    prev_xi = sc.xi;
    prev_s = sc.s;
  }
}
