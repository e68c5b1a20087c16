#include "dopd/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "dopd/estimators.hpp"
#include "dopd/feasible_set.hpp"
#include "dopd/rng.hpp"

namespace dopd {

namespace {

Eigen::VectorXd positive_part(const Eigen::VectorXd& v) {
  return v.cwiseMax(0.0);
}

Eigen::VectorXd sample_in_shrunk_set(const FeasibleSet& set, double xi,
                                     std::mt19937_64& g) {
  const double bound = (1.0 - xi) * set.extent;
  Eigen::VectorXd x(set.p);
  if (set.shape == FeasibleSet::Shape::box) {
    for (int k = 0; k < set.p; ++k) x[k] = rng::uniform(g, -bound, bound);
    return x;
  }
  // Uniform in the ball: direction times radius^(1/p)-distributed length.
  Eigen::VectorXd u = sample_sphere(set.p, g);
  const double radius =
      bound * std::pow(rng::uniform01(g), 1.0 / static_cast<double>(set.p));
  return radius * u;
}

// Convex mix of replica vectors; shared by every variant so that trajectories
// compare bit-for-bit across exchange modes.
Eigen::VectorXd mix_replicas(const MixingMatrix& W, int i,
                             const std::vector<Eigen::VectorXd>& reps, int p) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
  for (int j = 0; j < W.n(); ++j) {
    const double w = W.entries(i, j);
    if (w != 0.0) x += w * reps[j];
  }
  return x;
}

}  // namespace

DecisionLog run(const EngineConfig& cfg, const OnlineProblem& problem) {
  DecisionLog log;
  log.n = problem.agents();
  log.p = problem.dim();
  log.horizon = cfg.horizon;
  log.rounds.reserve(cfg.horizon > 0 ? cfg.horizon - 1 : 0);
  run_stream(cfg, problem,
             [&log](const RoundLog& r) { log.rounds.push_back(r); });
  return log;
}

void run_stream(const EngineConfig& cfg, const OnlineProblem& problem,
                const std::function<void(const RoundLog&)>& sink) {
  cfg.graph.validate();
  if (cfg.graph.n != problem.agents())
    throw std::invalid_argument("run: graph size != problem agents");
  if (cfg.horizon < 1) throw std::invalid_argument("run: horizon must be >= 1");
  if (!cfg.uncompressed && cfg.compressor.p != problem.dim())
    throw std::invalid_argument("run: compressor dimension mismatch");

  const int n = problem.agents();
  const int p = problem.dim();
  const FeasibleSet& set = problem.set();
  const ValueOracle values(problem);
  const bool track = !cfg.uncompressed && cfg.algo != Algo::full_information;

  // z_i,1 uniform in (1 - xi_1) X; zhat_j,0 = 0.
  const double xi1 = schedule_at(cfg.schedule, 1).xi;
  std::vector<Eigen::VectorXd> z(n);
  for (int i = 0; i < n; ++i) {
    auto g = rng::make_stream(cfg.seed, rng::Stream::init,
                              static_cast<std::uint64_t>(i), 0);
    z[i] = sample_in_shrunk_set(set, cfg.algo == Algo::full_information ? 0.0 : xi1, g);
  }

  std::vector<Eigen::VectorXd> zhat;  // ledger mode: the global sequence
  std::vector<std::vector<Eigen::VectorXd>> zhat_local;  // [receiver][sender]
  if (track) {
    zhat.assign(n, Eigen::VectorXd::Zero(p));
    if (cfg.replica_mode == ReplicaMode::strict_local)
      zhat_local.assign(n, std::vector<Eigen::VectorXd>(n, Eigen::VectorXd::Zero(p)));
  }

  GraphConfig graph_cfg = cfg.graph;
  graph_cfg.seed = cfg.seed;

  for (long t = 1; t < cfg.horizon; ++t) {
    const RoundScalars sc = schedule_at(cfg.schedule, t);
    const RoundScalars sc_next = schedule_at(cfg.schedule, t + 1);
    const double xi_proj =
        cfg.algo == Algo::full_information ? 0.0 : sc_next.xi;

    const MixingMatrix W = generate_round(graph_cfg, t);

    RoundLog row;
    row.t = t;
    row.alpha = sc.alpha;
    row.gamma = sc.gamma;
    row.xi = sc.xi;
    row.delta = sc.delta;
    row.s = sc.s;
    row.directed_edges = static_cast<long>(W.edge_set.size());
    row.bits = row.directed_edges * static_cast<long>(cfg.compressor.p) *
               cfg.compressor.qbits;
    if (cfg.uncompressed || cfg.algo == Algo::full_information)
      row.bits = row.directed_edges * static_cast<long>(p) * 64;

    // Message emission precedes all replica application (round barrier).
    if (track) {
      std::vector<Payload> msgs(n);
      for (int j = 0; j < n; ++j) {
        const Eigen::VectorXd& base =
            cfg.replica_mode == ReplicaMode::ledger ? zhat[j]
                                                    : zhat_local[j][j];
        auto g = rng::make_stream(cfg.seed, rng::Stream::compressor,
                                  static_cast<std::uint64_t>(j),
                                  static_cast<std::uint64_t>(t));
        msgs[j] = encode_tracking(cfg.compressor, z[j], base, sc.s, g);
        row.saturations += msgs[j].saturated;
      }
      if (cfg.replica_mode == ReplicaMode::ledger) {
        for (int j = 0; j < n; ++j)
          zhat[j] = apply_tracking(zhat[j], msgs[j], sc.s);
      } else {
        std::vector<std::vector<char>> in_nbr(n, std::vector<char>(n, 0));
        for (const auto& [j, i] : W.edge_set) in_nbr[i][j] = 1;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (j == i || in_nbr[i][j])
              zhat_local[i][j] = apply_tracking(zhat_local[i][j], msgs[j], sc.s);
          }
        }
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (j != i)
              row.replica_divergence =
                  std::max(row.replica_divergence,
                           (zhat_local[i][j] - zhat_local[j][j]).norm());
      }
      for (int j = 0; j < n; ++j) {
        const Eigen::VectorXd& own =
            cfg.replica_mode == ReplicaMode::ledger ? zhat[j] : zhat_local[j][j];
        row.replica_error_max =
            std::max(row.replica_error_max, (z[j] - own).norm());
      }
    }

    row.x.resize(n);
    std::vector<Eigen::VectorXd> z_next(n);
    for (int i = 0; i < n; ++i) {
      const std::vector<Eigen::VectorXd>& reps =
          track ? (cfg.replica_mode == ReplicaMode::ledger ? zhat
                                                           : zhat_local[i])
                : z;
      const Eigen::VectorXd x = mix_replicas(W, i, reps, p);
      row.x[i] = x;

      auto sphere_rng = rng::make_stream(cfg.seed, rng::Stream::sphere,
                                         static_cast<std::uint64_t>(i),
                                         static_cast<std::uint64_t>(t));

      Eigen::VectorXd direction;
      Eigen::VectorXd v;
      if (cfg.algo == Algo::full_information) {
        v = sc.gamma * positive_part(values.constraint(i, t, x));
        direction = problem.loss_grad(i, t, x) +
                    problem.constraint_jacobian(i, t, x).transpose() * v;
      } else {
        const Eigen::VectorXd u = sample_sphere(p, sphere_rng);
        const Eigen::VectorXd e = x + sc.delta * u;
        if (!contains(set, 0.0, e, 1e-9)) ++row.query_violations;
        const double f_pert = values.loss(i, t, e);
        const Eigen::VectorXd g_pert = values.constraint(i, t, e);
        if (cfg.algo == Algo::one_point) {
          v = sc.gamma * positive_part(g_pert);
          direction = one_point_loss_grad(f_pert, u, sc.delta) +
                      one_point_constraint_grad(g_pert, u, sc.delta) * v;
        } else {
          const double f_center = values.loss(i, t, x);
          const Eigen::VectorXd g_center = values.constraint(i, t, x);
          v = sc.gamma * positive_part(g_center);
          direction = two_point_loss_grad(f_pert, f_center, u, sc.delta) +
                      two_point_constraint_grad(g_pert, g_center, u, sc.delta) * v;
        }
      }
      if (!direction.allFinite())
        throw std::runtime_error("run: non-finite update direction");
      row.dual_norm_max = std::max(row.dual_norm_max, v.norm());

      z_next[i] = project(set, xi_proj, x - sc.alpha * direction);
      if (!contains(set, xi_proj, z_next[i], 1e-9)) ++row.iterate_violations;
    }

    z = std::move(z_next);
    sink(row);
  }
}

}  // namespace dopd
