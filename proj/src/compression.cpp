#include "dopd/compression.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dopd/rng.hpp"

namespace dopd {

CompressorSpec CompressorSpec::identity(int p, int qbits) {
  return {CompressorKind::identity, 0.0, p, qbits};
}

CompressorSpec CompressorSpec::uniform(int p, double delta, int qbits) {
  return {CompressorKind::uniform_quantizer, delta, p, qbits};
}

CompressorSpec CompressorSpec::stochastic(int p, double delta, int qbits) {
  return {CompressorKind::stochastic_quantizer, delta, p, qbits};
}

double CompressorSpec::error_bound() const {
  if (kind == CompressorKind::identity) return 0.0;
  return p * delta * delta / 4.0;
}

void CompressorSpec::validate() const {
  if (p < 1) throw std::invalid_argument("CompressorSpec: p must be >= 1");
  if (qbits < 1) throw std::invalid_argument("CompressorSpec: qbits must be >= 1");
  if (kind != CompressorKind::identity && delta <= 0.0)
    throw std::invalid_argument("CompressorSpec: delta must be positive");
}

namespace {

long lattice_range_max(int qbits) {
  if (qbits >= 63) return std::numeric_limits<long>::max();
  return (1L << (qbits - 1)) - 1;
}

}  // namespace

Payload compress(const CompressorSpec& spec, const Eigen::VectorXd& x,
                 std::mt19937_64& rng) {
  spec.validate();
  if (x.size() != spec.p)
    throw std::invalid_argument("compress: dimension mismatch");

  Payload out;
  out.bits = static_cast<long>(spec.p) * spec.qbits;
  if (spec.kind == CompressorKind::identity) {
    out.values = x;
    return out;
  }

  const double delta = spec.delta;
  const long range = lattice_range_max(spec.qbits);
  out.values.resize(spec.p);
  for (int k = 0; k < spec.p; ++k) {
    double idx;
    if (spec.kind == CompressorKind::uniform_quantizer) {
      idx = std::floor(x[k] / delta + 0.5);
    } else {
      const double base = std::floor(x[k] / delta);
      const double frac = x[k] / delta - base;
      idx = base + (rng::bernoulli(rng, frac) ? 1.0 : 0.0);
    }
    // Out-of-range lattice indices are counted, not clamped: clamping would
    // break the absolute error bound the codec is built on.
    if (std::abs(idx) > static_cast<double>(range)) ++out.saturated;
    out.values[k] = delta * idx;
  }
  return out;
}

Payload encode_tracking(const CompressorSpec& spec, const Eigen::VectorXd& z,
                        const Eigen::VectorXd& zhat_prev, double s,
                        std::mt19937_64& rng) {
  if (s <= 0.0) throw std::invalid_argument("encode_tracking: s must be positive");
  if (z.size() != zhat_prev.size())
    throw std::invalid_argument("encode_tracking: dimension mismatch");
  Payload out = compress(spec, (z - zhat_prev) / s, rng);
  if (spec.kind == CompressorKind::identity) out.exact = z;
  return out;
}

Eigen::VectorXd apply_tracking(const Eigen::VectorXd& zhat_prev,
                               const Payload& payload, double s) {
  if (payload.exact) return *payload.exact;
  if (zhat_prev.size() != payload.values.size())
    throw std::invalid_argument("apply_tracking: dimension mismatch");
  return zhat_prev + s * payload.values;
}

}  // namespace dopd
