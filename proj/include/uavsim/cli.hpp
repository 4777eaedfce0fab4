#pragma once

// `sim <scenario> [--config FILE] [--seed N] [--reps N] [--out CSV]
//      [--sweep key=v1,v2,...]... [--manifest FILE] [--threads N]`

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "harness.hpp"

namespace uavsim {

namespace detail {

inline void report_warnings(const RunResult& result, std::ostream& err) {
  std::size_t capped = 0;
  for (const auto& p : result.points) {
    if (result.scenario == Scenario::laser && p.cfg.city.laser_density == 0.0)
      err << "warning: sweep point " << p.index << " has zero laser density; charge probability is 0\n";
    if (const auto* cap = p.find("altitude_cap_exceeded"); cap && cap->stats.n > 0 && cap->stats.mean > 0.0)
      ++capped;
    for (const auto& m : p.metrics)
      if (m.attempted > 0 && m.stats.n < m.attempted && m.metric.rfind("backups_eq_", 0) != 0)
        err << "note: sweep point " << p.index << " " << (m.label.empty() ? "" : m.label + " ") << m.metric
            << ": " << (m.attempted - m.stats.n) << " of " << m.attempted << " replications infeasible\n";
  }
  if (capped > 0)
    err << "warning: " << capped << " of " << result.points.size()
        << " sweep points have missions above the altitude cap (heights are not clamped)\n";
}

}  // namespace detail

/// Entry point shared by the `sim` binary and the tests. Returns the exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"UAV small-cell battery continuity simulator"};
  std::string scenario_name, config_path, out_path, manifest_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<unsigned> threads;
  std::vector<std::string> sweeps;

  app.add_option("scenario", scenario_name, "lifetime | response | backups | hotswap | laser | roadmap")
      ->required();
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--seed", seed, "master seed (overrides [run] master_seed)");
  app.add_option("--reps", reps, "replications per sweep point (overrides [run] replications)");
  app.add_option("--out", out_path, "output CSV (default: stdout)");
  app.add_option("--sweep", sweeps, "sweep axis key=v1,v2,...; repeatable, overrides [sweep]");
  app.add_option("--manifest", manifest_path, "also write the fully-resolved configuration here");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    ExperimentConfig cfg;
    cfg.scenario = parse_scenario(scenario_name);
    if (!config_path.empty()) config::load_file(config_path, cfg);
    if (seed) cfg.master_seed = *seed;
    if (reps) {
      if (*reps == 0) throw ConfigError("--reps must be >= 1");
      cfg.replications = *reps;
    }
    if (threads) cfg.threads = *threads;
    for (const auto& s : sweeps) config::add_sweep(cfg, config::parse_sweep_arg(s));
    try {
      cfg.validate_models();
    } catch (const InvalidParameter& e) {
      throw ConfigError(e.what());
    }
    if (cfg.replications == 0) cfg.replications = cfg.effective_replications();

    if (!manifest_path.empty()) {
      std::ofstream mf(manifest_path);
      if (!mf) throw ConfigError("cannot write manifest '" + manifest_path + "'");
      config::write(mf, cfg);
    }

    const RunResult result = run(cfg);
    if (out_path.empty()) {
      write_csv(out, result);
    } else {
      std::ofstream of(out_path);
      if (!of) throw ConfigError("cannot write output '" + out_path + "'");
      write_csv(of, result);
    }
    detail::report_warnings(result, err);
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace uavsim
