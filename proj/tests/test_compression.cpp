#include <doctest.h>

#include <cmath>

#include "dopd/compression.hpp"
#include "dopd/rng.hpp"

using namespace dopd;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  int k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}
}  // namespace

TEST_CASE("uniform quantizer rounds to the lattice") {
  auto g = rng::make_stream(1, rng::Stream::compressor, 0, 0);
  const auto spec = CompressorSpec::uniform(2, 1.0);
  SUBCASE("interior point") {
    const auto out = compress(spec, vec({0.3, 1.7}), g);
    CHECK(out.values[0] == 0.0);
    CHECK(out.values[1] == 2.0);
    const double err2 = (out.values - vec({0.3, 1.7})).squaredNorm();
    CHECK(err2 == doctest::Approx(0.18));
    CHECK(err2 <= spec.error_bound());
  }
  SUBCASE("half-integer ties round up") {
    const auto one = CompressorSpec::uniform(1, 1.0);
    const auto out = compress(one, vec({-0.5}), g);
    CHECK(out.values[0] == 0.0);
  }
  SUBCASE("zero maps to zero exactly") {
    const auto out = compress(spec, Eigen::VectorXd::Zero(2), g);
    CHECK(out.values.isZero(0.0));
  }
}

TEST_CASE("identity compressor is exact and wide") {
  auto g = rng::make_stream(1, rng::Stream::compressor, 0, 0);
  const auto spec = CompressorSpec::identity(3);
  const auto x = vec({0.1, -2.7, 5.3});
  const auto out = compress(spec, x, g);
  CHECK((out.values - x).norm() == 0.0);
  CHECK(out.bits == 3 * 64);
  CHECK(spec.error_bound() == 0.0);
}

TEST_CASE("error bound is p delta^2 / 4") {
  CHECK(CompressorSpec::uniform(2, 1.0).error_bound() == doctest::Approx(0.5));
  CHECK(CompressorSpec::stochastic(4, 2.0).error_bound() ==
        doctest::Approx(4.0));
}

TEST_CASE("pathwise quantization error never exceeds the bound") {
  for (const int p : {1, 2, 4, 8}) {
    for (const double delta : {0.5, 1.0, 2.0}) {
      const auto spec = CompressorSpec::uniform(p, delta);
      auto g = rng::make_stream(5, rng::Stream::compressor,
                                static_cast<std::uint64_t>(p), 0);
      for (int k = 0; k < 10000; ++k) {
        Eigen::VectorXd x(p);
        for (int d = 0; d < p; ++d) x[d] = rng::uniform(g, -10.0, 10.0);
        const auto out = compress(spec, x, g);
        CHECK((out.values - x).squaredNorm() <= spec.error_bound() + 1e-12);
      }
    }
  }
}

TEST_CASE("stochastic quantizer is unbiased with bounded mean square error") {
  const auto spec = CompressorSpec::stochastic(2, 1.0);
  auto g = rng::make_stream(6, rng::Stream::compressor, 0, 0);
  const auto x = vec({0.37, -1.62});
  const int N = 100000;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  double msq = 0.0;
  for (int k = 0; k < N; ++k) {
    const auto out = compress(spec, x, g);
    mean += out.values;
    msq += (out.values - x).squaredNorm();
  }
  mean /= N;
  msq /= N;
  const double budget = 4.0 * (spec.delta / 2.0) / std::sqrt(N);
  CHECK(std::abs(mean[0] - x[0]) <= budget);
  CHECK(std::abs(mean[1] - x[1]) <= budget);
  CHECK(msq <= spec.error_bound() * 1.05);
}

TEST_CASE("tracking codec examples") {
  auto g = rng::make_stream(7, rng::Stream::compressor, 0, 0);
  SUBCASE("identity payload carries the scaled difference exactly") {
    const auto spec = CompressorSpec::identity(2);
    const auto z = vec({1.0, -3.0});
    const auto zhat = vec({0.25, 0.75});
    const auto msg = encode_tracking(spec, z, zhat, 0.7, g);
    CHECK((msg.values - (z - zhat) / 0.7).norm() == 0.0);
  }
  SUBCASE("matching states emit the zero payload") {
    const auto spec = CompressorSpec::uniform(2, 1.0);
    const auto z = vec({1.3, 0.4});
    const auto msg = encode_tracking(spec, z, z, 0.5, g);
    CHECK(msg.values.isZero(0.0));
  }
  SUBCASE("scaled difference is quantized") {
    const auto spec = CompressorSpec::uniform(1, 1.0);
    const auto msg = encode_tracking(spec, vec({1.2}), vec({0.0}), 0.5, g);
    CHECK(msg.values[0] == 2.0);  // argument 2.4
  }
}

TEST_CASE("replica application telescopes") {
  auto g = rng::make_stream(8, rng::Stream::compressor, 0, 0);
  SUBCASE("identity reproduces the sender state bit for bit") {
    const auto spec = CompressorSpec::identity(2);
    const auto z = vec({2.0, 4.0});
    const auto msg = encode_tracking(spec, z, vec({0.0, 0.0}), 0.7, g);
    const auto zhat = apply_tracking(vec({0.0, 0.0}), msg, 0.7);
    CHECK(zhat[0] == 2.0);
    CHECK(zhat[1] == 4.0);
  }
  SUBCASE("quantized payload applies at the codec scale") {
    Payload msg;
    msg.values = vec({2.0});
    const auto zhat = apply_tracking(vec({0.0}), msg, 0.5);
    CHECK(zhat[0] == doctest::Approx(1.0));
  }
  SUBCASE("zero payload leaves the replica unchanged") {
    Payload msg;
    msg.values = vec({0.0, 0.0});
    const auto prev = vec({1.5, -2.5});
    const auto zhat = apply_tracking(prev, msg, 0.25);
    CHECK((zhat - prev).norm() == 0.0);
  }
}

TEST_CASE("saturation is counted, not clamped") {
  const auto spec = CompressorSpec::uniform(1, 1.0, 4);  // range +-7
  auto g = rng::make_stream(9, rng::Stream::compressor, 0, 0);
  const auto out = compress(spec, vec({300.0}), g);
  CHECK(out.saturated == 1);
  CHECK(out.values[0] == 300.0);
}
