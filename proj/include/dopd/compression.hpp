#pragma once

#include <Eigen/Dense>

#include <optional>
#include <random>

namespace dopd {

enum class CompressorKind { identity, uniform_quantizer, stochastic_quantizer };

// Bounded-absolute-error compressors: ||C(x) - x||^2 <= error_bound()
// pathwise for the deterministic kinds and in expectation for the
// stochastic one.
struct CompressorSpec {
  CompressorKind kind = CompressorKind::uniform_quantizer;
  double delta = 1.0;  // lattice pitch (quantizers only)
  int p = 2;           // vector dimension
  int qbits = 8;       // per-coordinate encoding width, for bit accounting

  static CompressorSpec identity(int p, int qbits = 64);
  static CompressorSpec uniform(int p, double delta, int qbits = 8);
  static CompressorSpec stochastic(int p, double delta, int qbits = 8);

  // C of the error bound: 0 for identity, p*delta^2/4 for the quantizers.
  double error_bound() const;
  void validate() const;  // throws std::invalid_argument
};

struct Payload {
  Eigen::VectorXd values;  // quantizers emit integer multiples of delta
  long bits = 0;           // p * qbits
  long saturated = 0;      // coords whose lattice index exceeds qbits range
  // Identity codec only: the sender's state, carried so that replica
  // reconstruction telescopes exactly instead of round-tripping through
  // the scale factor.
  std::optional<Eigen::VectorXd> exact;
};

Payload compress(const CompressorSpec& spec, const Eigen::VectorXd& x,
                 std::mt19937_64& rng);

// Message for the scaled-difference tracking codec: compress((z - zhat)/s).
Payload encode_tracking(const CompressorSpec& spec, const Eigen::VectorXd& z,
                        const Eigen::VectorXd& zhat_prev, double s,
                        std::mt19937_64& rng);

// Replica update zhat <- zhat + s * payload; identity payloads reproduce the
// sender's z bit-for-bit.
Eigen::VectorXd apply_tracking(const Eigen::VectorXd& zhat_prev,
                               const Payload& payload, double s);

}  // namespace dopd
