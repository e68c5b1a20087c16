#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

#include "dopd/compression.hpp"
#include "dopd/problem.hpp"
#include "dopd/schedule.hpp"
#include "dopd/topology.hpp"

namespace dopd {

enum class Algo { one_point, two_point, full_information };

// Replica bookkeeping under time-varying graphs. `ledger` maintains the one
// global replica sequence (every message applied everywhere); `strict_local`
// keeps per-receiver tables that can go stale between contacts, with the
// divergence reported per round.
enum class ReplicaMode { ledger, strict_local };

struct EngineConfig {
  Algo algo = Algo::one_point;
  // Exchange raw primal states instead of tracked compressed differences
  // (the perfect-communication reference update).
  bool uncompressed = false;
  CompressorSpec compressor = CompressorSpec::uniform(2, 1.0);
  GraphConfig graph;
  ScheduleParams schedule;
  ReplicaMode replica_mode = ReplicaMode::ledger;
  std::uint64_t seed = 1;
  long horizon = 2000;  // T; rounds 1 .. T-1 are executed
};

struct RoundLog {
  long t;
  std::vector<Eigen::VectorXd> x;  // decisions x_i,t
  double alpha, gamma, xi, delta, s;
  long directed_edges = 0;
  long bits = 0;                  // transmitted this round
  double replica_error_max = 0.0; // max_i ||z_i,t - zhat_i,t||
  double replica_divergence = 0.0;
  double dual_norm_max = 0.0;
  long query_violations = 0;      // perturbed query outside the decision set
  long iterate_violations = 0;    // z outside the shrunk set
  long saturations = 0;
};

struct DecisionLog {
  int n = 0;
  int p = 0;
  long horizon = 0;
  std::vector<RoundLog> rounds;  // rounds 1 .. T-1 in order
};

DecisionLog run(const EngineConfig& cfg, const OnlineProblem& problem);

// Streaming variant: rounds are handed to the sink in order and not retained.
void run_stream(const EngineConfig& cfg, const OnlineProblem& problem,
                const std::function<void(const RoundLog&)>& sink);

}  // namespace dopd
