#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dopd/harness.hpp"
#include "dopd/metrics.hpp"

namespace dopd {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Trailing-decade fit: points with t >= t_final / 10.
double trailing_slope(const std::vector<std::pair<double, double>>& curve,
                      bool* ok = nullptr) {
  if (ok) *ok = false;
  if (curve.size() < 2) return 0.0;
  const double cutoff = curve.back().first / 10.0;
  std::vector<std::pair<double, double>> window;
  for (const auto& pt : curve)
    if (pt.first >= cutoff) window.push_back(pt);
  if (window.size() < 2) return 0.0;
  for (const auto& pt : window)
    if (pt.second <= 0.0) return 0.0;
  if (ok) *ok = true;
  return loglog_slope(window);
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  {
    const auto issues = finalize_and_validate(cfg);
    if (!issues.empty()) {
      std::string msg = "invalid configuration:";
      for (const auto& s : issues) msg += "\n  - " + s;
      throw std::invalid_argument(msg);
    }
  }

  std::filesystem::create_directories(cfg.out_dir);
  ExperimentResult result;

  for (const std::uint64_t seed : cfg.seeds) {
    const auto started = std::chrono::steady_clock::now();

    LocalizationProblem problem(problem_config(cfg, seed));
    const EngineConfig ec = engine_config(cfg, seed);

    const std::string csv_path =
        cfg.out_dir + "/" + cfg.algo + "_seed" + std::to_string(seed) + ".csv";
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    csv << "t,regret,ccv,cv,consensus_err,bits,seed,algo,compressor\n";

    MetricsAccumulator acc(problem);
    std::vector<std::pair<double, double>> regret_curve;
    std::vector<std::pair<double, double>> ccv_curve;
    SeedResult sr;
    sr.seed = seed;
    sr.csv_path = csv_path;

    const std::string comp_label =
        ec.algo == Algo::full_information || cfg.uncompressed ? "identity"
                                                              : cfg.compressor;
    run_stream(ec, problem, [&](const RoundLog& round) {
      acc.absorb(round);
      sr.saturations += round.saturations;
      if (round.t % cfg.stride == 0 || round.t == cfg.T - 1) {
        const auto snap = acc.snapshot();
        csv << snap.t << ',' << fmt(snap.regret) << ',' << fmt(snap.ccv) << ','
            << fmt(snap.cv) << ',' << fmt(snap.consensus) << ',' << snap.bits
            << ',' << seed << ',' << cfg.algo << ',' << comp_label << '\n';
        regret_curve.emplace_back(static_cast<double>(snap.t), snap.regret);
        ccv_curve.emplace_back(static_cast<double>(snap.t), snap.ccv);
        sr.final_regret = snap.regret;
        sr.final_ccv = snap.ccv;
        sr.final_cv = snap.cv;
        sr.total_bits = snap.bits;
      }
    });

    sr.regret_slope = trailing_slope(regret_curve, &sr.regret_slope_ok);
    sr.ccv_slope = trailing_slope(ccv_curve);
    sr.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    result.seeds.push_back(std::move(sr));
  }

  result.summary_path = cfg.out_dir + "/summary.txt";
  std::ofstream summary(result.summary_path);
  summary << "algo=" << cfg.algo << " compressor=" << cfg.compressor
          << " n=" << cfg.n << " T=" << cfg.T << " seeds=" << cfg.seeds.size()
          << "\n";
  double regret_mean = 0.0, ccv_mean = 0.0;
  for (const auto& sr : result.seeds) {
    summary << "seed " << sr.seed << ": regret=" << fmt(sr.final_regret)
            << " ccv=" << fmt(sr.final_ccv) << " cv=" << fmt(sr.final_cv)
            << " bits=" << sr.total_bits
            << " regret_slope=" << fmt(sr.regret_slope)
            << " ccv_slope=" << fmt(sr.ccv_slope)
            << " saturations=" << sr.saturations
            << " wall_s=" << fmt(sr.wall_seconds) << "\n";
    regret_mean += sr.final_regret;
    ccv_mean += sr.final_ccv;
  }
  regret_mean /= static_cast<double>(result.seeds.size());
  ccv_mean /= static_cast<double>(result.seeds.size());
  summary << "mean: regret=" << fmt(regret_mean) << " ccv=" << fmt(ccv_mean)
          << "\n";
  return result;
}

namespace {

struct CsvCurve {
  std::vector<double> t;
  std::vector<double> regret;
  std::vector<double> ccv;
  std::uint64_t seed = 0;
  std::string algo;
};

CsvCurve read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (header != "t,regret,ccv,cv,consensus_err,bits,seed,algo,compressor")
    throw std::runtime_error("schema mismatch in " + path);
  CsvCurve curve;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw std::runtime_error("bad row in " + path);
    curve.t.push_back(std::stod(fields[0]));
    curve.regret.push_back(std::stod(fields[1]));
    curve.ccv.push_back(std::stod(fields[2]));
    curve.seed = std::stoull(fields[6]);
    curve.algo = fields[7];
  }
  return curve;
}

}  // namespace

SlopeTable summarize(const std::vector<std::string>& csv_paths) {
  std::map<std::string, std::vector<CsvCurve>> by_algo;
  for (const auto& path : csv_paths) {
    CsvCurve c = read_csv(path);
    by_algo[c.algo].push_back(std::move(c));
  }

  SlopeTable table;
  for (auto& [algo, curves] : by_algo) {
    const std::size_t npts = curves.front().t.size();
    for (const auto& c : curves)
      if (c.t.size() != npts)
        throw std::runtime_error("summarize: curves for '" + algo +
                                 "' have mismatched lengths");

    SlopeRow row;
    row.algo = algo;
    row.seed_count = static_cast<int>(curves.size());

    std::vector<std::pair<double, double>> mean_regret(npts), mean_ccv(npts);
    for (std::size_t k = 0; k < npts; ++k) {
      double r = 0.0, v = 0.0;
      for (const auto& c : curves) {
        r += c.regret[k];
        v += c.ccv[k];
      }
      mean_regret[k] = {curves.front().t[k], r / curves.size()};
      mean_ccv[k] = {curves.front().t[k], v / curves.size()};
    }
    row.regret_slope = trailing_slope(mean_regret);
    row.ccv_slope = trailing_slope(mean_ccv);

    double sum_r = 0, sum_c = 0, sq_r = 0, sq_c = 0;
    for (const auto& c : curves) {
      sum_r += c.regret.back();
      sum_c += c.ccv.back();
    }
    row.final_regret_mean = sum_r / curves.size();
    row.final_ccv_mean = sum_c / curves.size();
    for (const auto& c : curves) {
      sq_r += (c.regret.back() - row.final_regret_mean) *
              (c.regret.back() - row.final_regret_mean);
      sq_c += (c.ccv.back() - row.final_ccv_mean) *
              (c.ccv.back() - row.final_ccv_mean);
    }
    if (curves.size() > 1) {
      row.final_regret_stderr =
          std::sqrt(sq_r / (curves.size() - 1) / curves.size());
      row.final_ccv_stderr =
          std::sqrt(sq_c / (curves.size() - 1) / curves.size());
    }
    table.rows.push_back(std::move(row));
  }

  std::vector<const SlopeRow*> order;
  for (const auto& r : table.rows) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const SlopeRow* a, const SlopeRow* b) {
    return a->final_regret_mean < b->final_regret_mean;
  });
  for (const auto* r : order) table.regret_ordering.push_back(r->algo);
  return table;
}

std::string format_slope_table(const SlopeTable& table) {
  std::ostringstream out;
  out << "algo              seeds  final_regret (stderr)    final_ccv (stderr)"
         "       regret_slope  ccv_slope\n";
  for (const auto& r : table.rows) {
    out << r.algo;
    for (std::size_t k = r.algo.size(); k < 18; ++k) out << ' ';
    out << r.seed_count << "      " << r.final_regret_mean << " ("
        << r.final_regret_stderr << ")  " << r.final_ccv_mean << " ("
        << r.final_ccv_stderr << ")  " << r.regret_slope << "  " << r.ccv_slope
        << "\n";
  }
  out << "regret ordering (smallest first): ";
  for (std::size_t k = 0; k < table.regret_ordering.size(); ++k)
    out << (k ? " < " : "") << table.regret_ordering[k];
  out << "\n";
  return out.str();
}

}  // namespace dopd
