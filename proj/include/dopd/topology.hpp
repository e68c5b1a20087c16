#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace dopd {

// Time-varying directed communication graphs with doubly stochastic mixing
// matrices: a random undirected layer of density rho plus a directed ring.
struct GraphConfig {
  int n = 100;
  double rho = 0.1;
  int window = 1;  // joint-connectivity window B
  bool ring = true;
  // When true, ordered pairs are sampled independently; the reverse of every
  // sampled edge is added as well so the mixing matrix stays doubly
  // stochastic. Default samples unordered pairs (both directions at once).
  bool directed_sampling = false;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct MixingMatrix {
  Eigen::MatrixXd entries;                      // rows indexed by receiver
  std::vector<std::pair<int, int>> edge_set;    // (j, i): i receives from j
  double weight_floor = 0.0;                    // min positive entry

  int n() const { return static_cast<int>(entries.rows()); }
  // Max deviation of row/column sums from 1.
  double stochasticity_defect() const;
};

MixingMatrix generate_round(const GraphConfig& cfg, long t);
MixingMatrix generate_round(const GraphConfig& cfg, std::mt19937_64& rng);

struct ContractionConstants {
  double tau;     // > 1
  double lambda;  // in (0, 1)
};

// tau = (1 - w/(4 n^2))^-2, lambda = (1 - w/(4 n^2))^(1/B).
ContractionConstants contraction_constants(int n, double w, int B);

// Left-multiplies the product W_t ... W_s and returns
// max_ij |[product]_ij - 1/n|. Indices are into `seq`, s <= t.
double consensus_deviation(std::span<const MixingMatrix> seq, std::size_t s,
                           std::size_t t);

// Strong connectivity of the union digraph over the given window.
bool union_strongly_connected(std::span<const MixingMatrix> seq);

}  // namespace dopd
