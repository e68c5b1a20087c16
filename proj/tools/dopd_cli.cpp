#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dopd/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Distributed online primal-dual bandit simulator"};
  app.require_subcommand(0, 1);

  dopd::RunConfig cfg;
  if (const char* env = std::getenv("DOPD_OUT_DIR")) cfg.out_dir = env;

  std::string config_path;
  std::vector<std::uint64_t> seeds;

  auto* run = app.add_subcommand("run", "execute an experiment");
  run->add_option("--config", config_path, "config file (flat key = value)");
  run->add_option("--algo", cfg.algo,
                  "one_point | two_point | full_information");
  run->add_flag("--uncompressed", cfg.uncompressed,
                "exchange raw states instead of tracked differences");
  run->add_option("--compressor", cfg.compressor,
                  "identity | uniform | stochastic");
  run->add_option("--delta", cfg.delta, "quantizer step");
  run->add_option("--qbits", cfg.qbits, "bits per transmitted coordinate");
  run->add_option("--T", cfg.T, "horizon (rounds 1..T-1 executed)");
  run->add_option("--stride", cfg.stride, "CSV sampling stride");
  run->add_option("--seeds", seeds, "seed list");
  run->add_option("--out", cfg.out_dir, "output directory");
  run->add_option("--n", cfg.n, "number of agents");
  run->add_option("--rho", cfg.rho, "edge sampling probability");
  run->add_option("--window", cfg.window, "joint-connectivity window B");
  run->add_option("--b", cfg.slater_b, "constraint offset lower bound");
  run->add_option("--theta1", cfg.theta1, "step-size exponent");
  run->add_option("--theta2", cfg.theta2, "regularization exponent");
  run->add_option("--theta3", cfg.theta3, "shrink/perturbation exponent");
  run->add_option("--theta4", cfg.theta4, "codec scale exponent");
  run->add_option("--alpha0", cfg.alpha0, "step-size scale");
  run->add_option("--gamma0", cfg.gamma0, "regularization scale");
  run->add_option("--s0", cfg.s0, "codec scale");
  run->add_option("--replica-mode", cfg.replica_mode,
                  "ledger | strict_local");

  std::vector<std::string> csv_paths;
  auto* sum = app.add_subcommand("summarize", "aggregate CSVs across seeds");
  sum->add_option("csvs", csv_paths, "per-seed CSV files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sum->parsed()) {
      std::cout << dopd::format_slope_table(dopd::summarize(csv_paths));
      return 0;
    }
    // `run` is also the default when no subcommand is given.
    if (!config_path.empty()) {
      dopd::RunConfig base = dopd::load_config(config_path);
      // Flags win over the file: restore file values only for unset options.
      auto keep = [&](const std::string& name) {
        const auto* opt = run->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
      };
      if (!keep("--algo")) cfg.algo = base.algo;
      if (!run->get_option("--uncompressed")->count())
        cfg.uncompressed = base.uncompressed;
      if (!keep("--compressor")) cfg.compressor = base.compressor;
      if (!keep("--delta")) cfg.delta = base.delta;
      if (!keep("--qbits")) cfg.qbits = base.qbits;
      if (!keep("--T")) cfg.T = base.T;
      if (!keep("--stride")) cfg.stride = base.stride;
      if (!keep("--out")) cfg.out_dir = base.out_dir;
      if (!keep("--n")) cfg.n = base.n;
      if (!keep("--rho")) cfg.rho = base.rho;
      if (!keep("--window")) cfg.window = base.window;
      if (!keep("--b")) cfg.slater_b = base.slater_b;
      if (!keep("--theta1")) cfg.theta1 = base.theta1;
      if (!keep("--theta2")) cfg.theta2 = base.theta2;
      if (!keep("--theta3")) cfg.theta3 = base.theta3;
      if (!keep("--theta4")) cfg.theta4 = base.theta4;
      if (!keep("--alpha0")) cfg.alpha0 = base.alpha0;
      if (!keep("--gamma0")) cfg.gamma0 = base.gamma0;
      if (!keep("--s0")) cfg.s0 = base.s0;
      if (!keep("--replica-mode")) cfg.replica_mode = base.replica_mode;
      if (seeds.empty()) seeds = base.seeds;
    }
    if (!seeds.empty()) cfg.seeds = seeds;

    {
      dopd::RunConfig check = cfg;
      const auto issues = dopd::finalize_and_validate(check);
      if (!issues.empty()) {
        std::cerr << "configuration invalid:\n";
        for (const auto& s : issues) std::cerr << "  - " << s << "\n";
        return 2;
      }
    }

    const auto result = dopd::run_experiment(cfg);
    for (const auto& sr : result.seeds)
      std::cout << "seed " << sr.seed << ": regret=" << sr.final_regret
                << " ccv=" << sr.final_ccv << " bits=" << sr.total_bits
                << " -> " << sr.csv_path << "\n";
    std::cout << "summary: " << result.summary_path << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
