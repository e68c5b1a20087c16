#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dopd/engine.hpp"
#include "dopd/localization.hpp"

namespace dopd {

// Experiment front-end configuration. File format is flat `key = value`
// lines with dotted sections and `#` comments.
struct RunConfig {
  std::string algo = "one_point";  // one_point | two_point | full_information
  bool uncompressed = false;       // raw-state exchange reference
  std::string replica_mode = "ledger";
  long T = 2000;
  int stride = 10;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  std::string out_dir = "out";

  std::string compressor = "uniform";  // identity | uniform | stochastic
  double delta = 1.0;
  int qbits = 8;

  int n = 100;
  double rho = 0.1;
  int window = 1;
  bool ring = true;
  bool directed_sampling = false;

  double slater_b = 0.01;
  int m = 2;
  double noise_hi = 0.001;
  double half_width = 5.0;

  // NaN entries are auto-filled at validation: theta2/theta3 from the
  // balanced choice (one_point), gamma0 from its validity cap, alpha0 from a
  // per-variant default.
  double theta1 = 0.8;
  double theta2 = std::numeric_limits<double>::quiet_NaN();
  double theta3 = std::numeric_limits<double>::quiet_NaN();
  double theta4 = 1.0;
  double alpha0 = std::numeric_limits<double>::quiet_NaN();
  double gamma0 = std::numeric_limits<double>::quiet_NaN();
  double s0 = 1.0;
  int t_offset = 1;
};

RunConfig load_config(const std::string& path);       // throws on parse error
RunConfig parse_config_text(const std::string& text);
void save_config(const RunConfig& cfg, const std::string& path);
std::string config_to_text(const RunConfig& cfg);

// Fills NaN schedule fields in place and returns the list of violated
// constraints (empty == valid).
std::vector<std::string> finalize_and_validate(RunConfig& cfg);

EngineConfig engine_config(const RunConfig& cfg, std::uint64_t seed);
LocalizationProblem::Config problem_config(const RunConfig& cfg,
                                           std::uint64_t seed);

struct SeedResult {
  std::uint64_t seed;
  std::string csv_path;
  double final_regret = 0.0;
  double final_ccv = 0.0;
  double final_cv = 0.0;
  long total_bits = 0;
  long saturations = 0;
  double regret_slope = 0.0;  // trailing-decade loglog fit
  double ccv_slope = 0.0;
  bool regret_slope_ok = false;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  std::vector<SeedResult> seeds;
  std::string summary_path;
};

// Runs every seed, writes one CSV per seed (schema
// t,regret,ccv,cv,consensus_err,bits,seed,algo,compressor) plus a summary
// file, and returns the per-seed results.
ExperimentResult run_experiment(const RunConfig& cfg);

struct SlopeRow {
  std::string algo;
  int seed_count = 0;
  double final_regret_mean = 0.0;
  double final_regret_stderr = 0.0;
  double final_ccv_mean = 0.0;
  double final_ccv_stderr = 0.0;
  double regret_slope = 0.0;  // fit on the cross-seed mean curve
  double ccv_slope = 0.0;
};

struct SlopeTable {
  std::vector<SlopeRow> rows;
  std::vector<std::string> regret_ordering;  // algos, smallest final first
};

SlopeTable summarize(const std::vector<std::string>& csv_paths);
std::string format_slope_table(const SlopeTable& table);

}  // namespace dopd
