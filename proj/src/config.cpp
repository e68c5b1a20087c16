#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "dopd/harness.hpp"
#include "dopd/schedule.hpp"

namespace dopd {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::runtime_error("config line " + std::to_string(line) +
                           ": expected boolean, got '" + v + "'");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& v, int line) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      seeds.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw std::runtime_error("config line " + std::to_string(line) +
                               ": bad seed '" + item + "'");
    }
  }
  if (seeds.empty())
    throw std::runtime_error("config line " + std::to_string(line) +
                             ": empty seed list");
  return seeds;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line) +
                               ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));

    auto num = [&]() -> double {
      try {
        std::size_t used = 0;
        const double d = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        return d;
      } catch (const std::exception&) {
        throw std::runtime_error("config line " + std::to_string(line) +
                                 ": bad number '" + val + "'");
      }
    };

    if (key == "algo") cfg.algo = val;
    else if (key == "uncompressed") cfg.uncompressed = parse_bool(val, line);
    else if (key == "replica_mode") cfg.replica_mode = val;
    else if (key == "T") cfg.T = static_cast<long>(num());
    else if (key == "stride") cfg.stride = static_cast<int>(num());
    else if (key == "seeds") cfg.seeds = parse_seed_list(val, line);
    else if (key == "out_dir") cfg.out_dir = val;
    else if (key == "compressor.kind") cfg.compressor = val;
    else if (key == "compressor.delta") cfg.delta = num();
    else if (key == "compressor.qbits") cfg.qbits = static_cast<int>(num());
    else if (key == "graph.n") cfg.n = static_cast<int>(num());
    else if (key == "graph.rho") cfg.rho = num();
    else if (key == "graph.window") cfg.window = static_cast<int>(num());
    else if (key == "graph.ring") cfg.ring = parse_bool(val, line);
    else if (key == "graph.directed") cfg.directed_sampling = parse_bool(val, line);
    else if (key == "problem.b") cfg.slater_b = num();
    else if (key == "problem.m") cfg.m = static_cast<int>(num());
    else if (key == "problem.noise_hi") cfg.noise_hi = num();
    else if (key == "set.half_width") cfg.half_width = num();
    else if (key == "schedule.theta1") cfg.theta1 = num();
    else if (key == "schedule.theta2") cfg.theta2 = num();
    else if (key == "schedule.theta3") cfg.theta3 = num();
    else if (key == "schedule.theta4") cfg.theta4 = num();
    else if (key == "schedule.alpha0") cfg.alpha0 = num();
    else if (key == "schedule.gamma0") cfg.gamma0 = num();
    else if (key == "schedule.s0") cfg.s0 = num();
    else if (key == "schedule.offset") cfg.t_offset = static_cast<int>(num());
    else
      throw std::runtime_error("config line " + std::to_string(line) +
                               ": unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_text(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "algo = " << cfg.algo << "\n"
      << "uncompressed = " << (cfg.uncompressed ? "true" : "false") << "\n"
      << "replica_mode = " << cfg.replica_mode << "\n"
      << "T = " << cfg.T << "\n"
      << "stride = " << cfg.stride << "\n"
      << "out_dir = " << cfg.out_dir << "\n";
  out << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
    out << (i ? "," : "") << cfg.seeds[i];
  out << "\n";
  out << "compressor.kind = " << cfg.compressor << "\n"
      << "compressor.delta = " << cfg.delta << "\n"
      << "compressor.qbits = " << cfg.qbits << "\n"
      << "graph.n = " << cfg.n << "\n"
      << "graph.rho = " << cfg.rho << "\n"
      << "graph.window = " << cfg.window << "\n"
      << "graph.ring = " << (cfg.ring ? "true" : "false") << "\n"
      << "graph.directed = " << (cfg.directed_sampling ? "true" : "false") << "\n"
      << "problem.b = " << cfg.slater_b << "\n"
      << "problem.m = " << cfg.m << "\n"
      << "problem.noise_hi = " << cfg.noise_hi << "\n"
      << "set.half_width = " << cfg.half_width << "\n"
      << "schedule.theta1 = " << cfg.theta1 << "\n";
  if (!std::isnan(cfg.theta2)) out << "schedule.theta2 = " << cfg.theta2 << "\n";
  if (!std::isnan(cfg.theta3)) out << "schedule.theta3 = " << cfg.theta3 << "\n";
  out << "schedule.theta4 = " << cfg.theta4 << "\n";
  if (!std::isnan(cfg.alpha0)) out << "schedule.alpha0 = " << cfg.alpha0 << "\n";
  if (!std::isnan(cfg.gamma0)) out << "schedule.gamma0 = " << cfg.gamma0 << "\n";
  out << "schedule.s0 = " << cfg.s0 << "\n"
      << "schedule.offset = " << cfg.t_offset << "\n";
  return out.str();
}

void save_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << config_to_text(cfg);
}

std::vector<std::string> finalize_and_validate(RunConfig& cfg) {
  std::vector<std::string> issues;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) issues.push_back(msg);
  };

  require(cfg.algo == "one_point" || cfg.algo == "two_point" ||
              cfg.algo == "full_information",
          "algo must be one_point, two_point or full_information");
  require(cfg.replica_mode == "ledger" || cfg.replica_mode == "strict-local",
          "replica_mode must be ledger or strict-local");
  require(cfg.compressor == "identity" || cfg.compressor == "uniform" ||
              cfg.compressor == "stochastic",
          "compressor must be identity, uniform or stochastic");
  require(cfg.T >= 1, "T must be >= 1");
  require(cfg.stride >= 1, "stride must be >= 1");
  require(cfg.n >= 2, "graph.n must be >= 2");
  require(cfg.rho >= 0.0 && cfg.rho <= 1.0, "graph.rho must be in [0,1]");
  require(cfg.m >= 1, "problem.m must be >= 1");
  require(cfg.half_width > 0.0, "set.half_width must be positive");
  require(cfg.delta > 0.0 || cfg.compressor == "identity",
          "compressor.delta must be positive");
  require(!cfg.seeds.empty(), "seed list must be nonempty");
  if (!issues.empty()) return issues;

  const bool two_point_family =
      cfg.algo == "two_point" || cfg.algo == "full_information";

  if (std::isnan(cfg.alpha0)) cfg.alpha0 = two_point_family ? 0.05 : 0.05;

  if (!two_point_family) {
    if (std::isnan(cfg.theta2) || std::isnan(cfg.theta3)) {
      const auto bal = balanced_exponents(cfg.theta1);
      if (!bal) {
        issues.push_back(
            "theta2/theta3 omitted but theta1 outside (3/4, 5/6]; no balanced "
            "choice exists");
        return issues;
      }
      if (std::isnan(cfg.theta2)) cfg.theta2 = bal->theta2;
      if (std::isnan(cfg.theta3)) cfg.theta3 = bal->theta3;
    }
  }

  // Problem constants for the gamma0 cap (seed-independent bounds).
  LocalizationProblem problem(problem_config(cfg, cfg.seeds.front()));
  const auto constants = problem.constants();
  const int p = problem.dim();
  const double bound2 = two_point_family ? constants.G2 : constants.F2;
  // With exact gradients the estimator-variance inflation factor (p^2 + 1)
  // in the two_point gamma0 range drops out.
  const bool exact_grad = cfg.algo == "full_information";
  const double full_cap = 1.0 / (4.0 * constants.G2 * constants.G2);
  if (std::isnan(cfg.gamma0)) {
    cfg.gamma0 = exact_grad ? full_cap
                 : two_point_family
                     ? 1.0 / (4.0 * (static_cast<double>(p) * p + 1.0) *
                              constants.G2 * constants.G2)
                     : cfg.half_width * cfg.half_width /
                           (2.0 * p * p * constants.F2 * constants.F2);
  }
  if (exact_grad && cfg.gamma0 > full_cap)
    issues.push_back("gamma0 exceeds 1 / (4 G2^2) for full_information");

  ScheduleParams sched = engine_config(cfg, cfg.seeds.front()).schedule;
  auto sched_issues =
      validate(sched, exact_grad ? std::optional<double>{} : bound2, p);
  issues.insert(issues.end(), sched_issues.begin(), sched_issues.end());
  return issues;
}

EngineConfig engine_config(const RunConfig& cfg, std::uint64_t seed) {
  EngineConfig ec;
  ec.algo = cfg.algo == "one_point"   ? Algo::one_point
            : cfg.algo == "two_point" ? Algo::two_point
                                      : Algo::full_information;
  ec.uncompressed = cfg.uncompressed;
  ec.replica_mode = cfg.replica_mode == "strict-local"
                        ? ReplicaMode::strict_local
                        : ReplicaMode::ledger;
  ec.seed = seed;
  ec.horizon = cfg.T;

  const int p = 2;
  if (cfg.compressor == "identity")
    ec.compressor = CompressorSpec::identity(p);
  else if (cfg.compressor == "uniform")
    ec.compressor = CompressorSpec::uniform(p, cfg.delta, cfg.qbits);
  else
    ec.compressor = CompressorSpec::stochastic(p, cfg.delta, cfg.qbits);
  if (ec.algo == Algo::full_information)
    ec.compressor = CompressorSpec::identity(p);

  ec.graph.n = cfg.n;
  ec.graph.rho = cfg.rho;
  ec.graph.window = cfg.window;
  ec.graph.ring = cfg.ring;
  ec.graph.directed_sampling = cfg.directed_sampling;
  ec.graph.seed = seed;

  ec.schedule.variant = (ec.algo == Algo::one_point) ? Variant::one_point
                                                     : Variant::two_point;
  ec.schedule.theta1 = cfg.theta1;
  ec.schedule.theta3 = cfg.theta3;
  if (ec.schedule.variant == Variant::one_point) {
    ec.schedule.theta2 = cfg.theta2;
    ec.schedule.theta4 = cfg.theta4;
  } else {
    // two_point family: the codec scale exponent is theta4 in the config.
    ec.schedule.theta2 = cfg.theta4;
  }
  ec.schedule.alpha0 = cfg.alpha0;
  ec.schedule.gamma0 = cfg.gamma0;
  ec.schedule.s0 = cfg.s0;
  ec.schedule.r = cfg.half_width;
  ec.schedule.t_offset = cfg.t_offset;
  return ec;
}

LocalizationProblem::Config problem_config(const RunConfig& cfg,
                                           std::uint64_t seed) {
  LocalizationProblem::Config pc;
  pc.n = cfg.n;
  pc.m = cfg.m;
  pc.slater_b = cfg.slater_b;
  pc.half_width = cfg.half_width;
  pc.noise_hi = cfg.noise_hi;
  pc.sensor_range = cfg.half_width;
  pc.horizon = cfg.T;
  pc.seed = seed;
  return pc;
}

}  // namespace dopd
