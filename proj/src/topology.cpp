#include "dopd/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dopd/rng.hpp"

namespace dopd {

void GraphConfig::validate() const {
  if (n < 2) throw std::invalid_argument("GraphConfig: n must be >= 2");
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("GraphConfig: rho must be in [0, 1]");
  if (window < 1) throw std::invalid_argument("GraphConfig: window must be >= 1");
}

double MixingMatrix::stochasticity_defect() const {
  double defect = 0.0;
  const int m = n();
  for (int i = 0; i < m; ++i) {
    defect = std::max(defect, std::abs(entries.row(i).sum() - 1.0));
    defect = std::max(defect, std::abs(entries.col(i).sum() - 1.0));
  }
  return defect;
}

MixingMatrix generate_round(const GraphConfig& cfg, long t) {
  auto g = rng::make_stream(cfg.seed, rng::Stream::graph, 0,
                            static_cast<std::uint64_t>(t));
  return generate_round(cfg, g);
}

MixingMatrix generate_round(const GraphConfig& cfg, std::mt19937_64& gen) {
  cfg.validate();
  const int n = cfg.n;

  // Edge multiplicities, receiver-major: cnt(i, j) counts copies of (j, i).
  // A sampled connection contributes one copy in each direction and the ring
  // contributes an extra copy, which keeps in- and out-counts equal at every
  // node and the matrix doubly stochastic.
  Eigen::MatrixXi cnt = Eigen::MatrixXi::Zero(n, n);
  if (cfg.directed_sampling) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (rng::bernoulli(gen, cfg.rho)) {
          cnt(j, i) += 1;
          cnt(i, j) += 1;
        }
      }
    }
    // Both orientations of a doubly-sampled pair were added twice; collapse.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cnt(i, j) = std::min(cnt(i, j), 1);
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng::bernoulli(gen, cfg.rho)) {
          cnt(i, j) += 1;
          cnt(j, i) += 1;
        }
      }
    }
  }
  if (cfg.ring) {
    for (int i = 0; i < n; ++i) {
      const int succ = (i + 1) % n;
      cnt(succ, i) += 1;  // edge (i, i+1): successor receives from i
    }
  }

  // Weight per copy is 1/n. If some node would collect a full unit of
  // off-diagonal weight (possible only in near-complete graphs), scale all
  // off-diagonal weights uniformly so every diagonal stays >= 1/n. Uniform
  // scaling of a balanced multiplicity matrix preserves double
  // stochasticity.
  int max_indeg = 0;
  for (int i = 0; i < n; ++i)
    max_indeg = std::max(max_indeg, cnt.row(i).sum());
  const double beta =
      max_indeg > n - 1 ? static_cast<double>(n - 1) / max_indeg : 1.0;

  MixingMatrix out;
  out.entries = Eigen::MatrixXd::Zero(n, n);
  double floor = 1.0;
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j || cnt(i, j) == 0) continue;
      const double w = beta * cnt(i, j) / n;
      out.entries(i, j) = w;
      out.edge_set.emplace_back(j, i);
      off += w;
      floor = std::min(floor, w);
    }
    out.entries(i, i) = 1.0 - off;
    floor = std::min(floor, out.entries(i, i));
  }
  out.weight_floor = floor;
  return out;
}

ContractionConstants contraction_constants(int n, double w, int B) {
  if (n < 2 || w <= 0.0 || w >= 1.0 || B < 1)
    throw std::domain_error("contraction_constants: need n >= 2, w in (0,1), B >= 1");
  const double base = 1.0 - w / (4.0 * n * n);
  return {std::pow(base, -2.0), std::pow(base, 1.0 / B)};
}

double consensus_deviation(std::span<const MixingMatrix> seq, std::size_t s,
                           std::size_t t) {
  if (s > t || t >= seq.size())
    throw std::out_of_range("consensus_deviation: bad window");
  const int n = seq[s].n();
  Eigen::MatrixXd prod = seq[s].entries;
  for (std::size_t k = s + 1; k <= t; ++k) {
    if (seq[k].n() != n)
      throw std::invalid_argument("consensus_deviation: dimension mismatch");
    prod = seq[k].entries * prod;  // Psi_s^t = W_t ... W_s
  }
  return (prod.array() - 1.0 / n).abs().maxCoeff();
}

bool union_strongly_connected(std::span<const MixingMatrix> seq) {
  if (seq.empty()) return false;
  const int n = seq.front().n();
  std::vector<std::vector<int>> adj(n);
  for (const auto& m : seq)
    for (const auto& [j, i] : m.edge_set) adj[j].push_back(i);

  auto reaches_all = [&](int src) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{src};
    seen[src] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  for (int i = 0; i < n; ++i)
    if (!reaches_all(i)) return false;
  return true;
}

}  // namespace dopd
