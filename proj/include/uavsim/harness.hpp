#pragma once

/// \file harness.hpp
/// Seeded Monte Carlo engine. Each (sweep point, replication) pair gets its
/// own seed derived from the master seed and the two indices, every
/// replication writes into its own slot, and aggregation runs serially in
/// index order, so results are bitwise independent of the thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "energetics.hpp"
#include "lasercharge.hpp"
#include "random.hpp"
#include "roadmap.hpp"
#include "stats.hpp"
#include "strategies.hpp"
#include "worldgen.hpp"

namespace uavsim {

/// One cell of the sweep grid with every derived input resolved.
struct SweepPoint {
  std::size_t index = 0;
  std::vector<double> coords;
  ExperimentConfig cfg;
  HeightRule heights;
  std::vector<BatteryTech> techs;  ///< roadmap only
};

struct MetricSummary {
  std::string label;  ///< technology name in the roadmap scenario, else empty
  std::string metric;
  StatSummary stats;
  std::size_t attempted = 0;

  double feasible_fraction() const {
    return attempted ? static_cast<double>(stats.n) / static_cast<double>(attempted) : 0.0;
  }
};

struct PointResult {
  std::size_t index = 0;
  std::vector<double> coords;
  ExperimentConfig cfg;
  std::vector<MetricSummary> metrics;

  const MetricSummary* find(std::string_view metric, std::string_view label = {}) const {
    for (const auto& m : metrics)
      if (m.metric == metric && m.label == label) return &m;
    return nullptr;
  }
};

struct RunResult {
  Scenario scenario = Scenario::lifetime;
  std::vector<std::string> axes;
  std::vector<PointResult> points;
};

namespace detail {

inline std::string describe_point(const std::vector<SweepAxis>& axes, const std::vector<double>& coords,
                                  std::size_t index) {
  std::ostringstream os;
  os << "sweep point " << index;
  if (!axes.empty()) {
    os << " (";
    for (std::size_t a = 0; a < axes.size(); ++a)
      os << (a ? ", " : "") << axes[a].path << "=" << csv::format_double(coords[a]);
    os << ")";
  }
  return os.str();
}

inline std::vector<BatteryTech> resolve_techs(const ExperimentConfig& cfg) {
  if (!cfg.roadmap.tech_table.empty()) return read_technology_table(cfg.roadmap.tech_table);
  const auto& r = cfg.roadmap;
  const TrendModel plateau = li_ion_plateau_trend(r.base_density, r.base_year, r.plateau_gain, r.plateau_year);
  const TrendModel trend{r.base_density, r.base_year, r.annual_growth, std::nullopt};
  return {
      {"li_ion_today", r.base_density, "commercial today"},
      {"li_ion_plateau", projected_density(plateau, r.year), "ceiling reached " + std::to_string(r.plateau_year)},
      {"three_percent_rule", projected_density(trend, r.year), "trend value in " + std::to_string(r.year)},
      {"hydrogen_fuel_cell", 490.0, ""},
      {"lithium_sulfur", 500.0, ""},
      {"lithium_air", 1300.0, ""},
  };
}

}  // namespace detail

/// Cartesian product of the sweep axes, first axis varying slowest.
inline std::vector<SweepPoint> expand_sweep(const ExperimentConfig& base) {
  config::validate_sweep(base);
  std::size_t total = 1;
  for (const auto& axis : base.sweep) total *= axis.values.size();

  std::optional<HeightTable> table;
  if (!base.mission.height_table.empty()) table = HeightTable::from_file(base.mission.height_table);

  std::vector<SweepPoint> points;
  points.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    SweepPoint p;
    p.index = i;
    p.cfg = base;
    std::size_t rest = i;
    p.coords.assign(base.sweep.size(), 0.0);
    for (std::size_t a = base.sweep.size(); a-- > 0;) {
      const auto& axis = base.sweep[a];
      p.coords[a] = axis.values[rest % axis.values.size()];
      rest /= axis.values.size();
    }
    try {
      for (std::size_t a = 0; a < base.sweep.size(); ++a)
        config::sweepable_key(base.sweep[a].path).set_number(p.cfg, p.coords[a]);
      p.cfg.validate_models();
      p.heights.table = table;
      if (p.cfg.scenario == Scenario::roadmap) p.techs = detail::resolve_techs(p.cfg);
    } catch (const std::exception& e) {
      throw ConfigError(detail::describe_point(base.sweep, p.coords, i) + ": " + e.what());
    }
    points.push_back(std::move(p));
  }
  return points;
}

namespace detail {

struct MetricSlot {
  std::string label;
  std::string metric;
};

inline std::vector<MetricSlot> metric_layout(const SweepPoint& p) {
  switch (p.cfg.scenario) {
    case Scenario::lifetime:
      return {{"", "hover_time_s"}, {"", "hover_time_min"}, {"", "altitude_cap_exceeded"}};
    case Scenario::response:
      return {{"", "response_time_s"}, {"", "return_time_s"}, {"", "dock_distance_m"}};
    case Scenario::backups:
      return {{"", "backups"}, {"", "turnaround_s"}, {"", "hover_time_s"}};
    case Scenario::hotswap:
      return {{"", "downtime_s"}, {"", "service_time_s"}, {"", "duty_cycle"}};
    case Scenario::laser:
      if (p.cfg.laser.fleet_assignment) return {{"", "charge_probability"}, {"", "powered_fraction"}};
      return {{"", "charge_probability"}};
    case Scenario::roadmap: {
      std::vector<MetricSlot> slots;
      for (const auto& t : p.techs) {
        slots.push_back({t.name, "density_wh_per_kg"});
        slots.push_back({t.name, "hover_endurance_s"});
        if (p.cfg.roadmap.include_travel) slots.push_back({t.name, "mission_hover_s"});
      }
      return slots;
    }
  }
  return {};
}

/// Geometry of one served hotspot: nearest dock and operating height.
struct MissionDraw {
  bool has_dock = false;
  MissionPlan plan;
  Hotspot hotspot;
};

inline MissionDraw draw_mission(const SweepPoint& p, std::uint64_t seed) {
  const ExperimentConfig& c = p.cfg;
  const WorldRealization world = sample_world(c.city, seed);
  Rng rng(derive_seed({seed, 0x4d495353ULL}));
  MissionDraw d;
  d.hotspot = choose_interior_hotspot(world, c.city, rng);
  if (world.docks.empty()) return d;
  const auto dock = nearest(d.hotspot.center, world.docks);
  const double radius = c.mission.hotspot_radius > 0.0 ? c.mission.hotspot_radius : d.hotspot.radius;
  const double height =
      c.mission.operate_height > 0.0 ? c.mission.operate_height : p.heights.height(radius, c.mission.beamwidth_deg);
  d.has_dock = true;
  d.plan = plan_mission(world.docks[dock.index].z, height, dock.distance);
  return d;
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline void evaluate_replication(const SweepPoint& p, std::uint64_t seed, std::vector<double>& out) {
  const ExperimentConfig& c = p.cfg;
  const EnduranceOptions options{c.mission.reserve_fraction, c.mission.altitude_cap};
  std::fill(out.begin(), out.end(), kNaN);

  switch (c.scenario) {
    case Scenario::lifetime:
    case Scenario::response:
    case Scenario::backups:
    case Scenario::hotswap: {
      const MissionDraw d = draw_mission(p, seed);
      if (!d.has_dock) return;
      try {
        if (c.scenario == Scenario::lifetime) {
          const auto r = mission_endurance(c.platform, d.plan, options);
          out[0] = r.hover_time;
          out[1] = r.hover_time / 60.0;
          out[2] = r.exceeds_altitude_cap ? 1.0 : 0.0;
        } else if (c.scenario == Scenario::response) {
          const auto r = mission_endurance(c.platform, d.plan, options);
          out[0] = r.response_time;
          out[1] = r.return_time;
          out[2] = d.plan.horizontal_distance;
        } else if (c.scenario == Scenario::backups) {
          SwapPolicy policy = c.policy;
          policy.mode = SwapMode::fleet_cycle;
          const auto r = mission_endurance(c.platform, d.plan, options);
          const auto o = fleet_cycle_outcome(c.platform, d.plan, policy, options);
          out[0] = o.backups_required;
          out[1] = fleet_turnaround(c.platform, r, policy);
          out[2] = o.service_time;
        } else {
          SwapPolicy policy = c.policy;
          policy.mode = SwapMode::battery_hotswap;
          const auto o = hotswap_downtime(c.platform, d.plan, policy, options);
          out[0] = o.downtime;
          out[1] = o.service_time;
          out[2] = o.duty_cycle();
        }
      } catch (const InsufficientBattery&) {
        // counted as infeasible
      }
      return;
    }
    case Scenario::laser: {
      LaserExperiment exp{c.laser.rx, c.laser.tx, c.laser.uav_height, std::nullopt};
      if (c.laser.tx_height > 0.0) exp.tx_height = c.laser.tx_height;
      out[0] = laser_replication(c.city, exp, c.platform, seed).sustained ? 1.0 : 0.0;
      if (c.laser.fleet_assignment) {
        const WorldRealization world = sample_world(c.city, seed);
        std::vector<Point3> uavs;
        for (const auto& h : world.hotspots)
          if (in_interior(c.city, h.center)) uavs.push_back({h.center.x, h.center.y, c.laser.uav_height});
        std::vector<LaserTransmitter> lasers;
        for (const auto& pos : world.lasers) {
          LaserTransmitter tx = c.laser.tx;
          tx.position = pos;
          if (exp.tx_height) tx.position.z = *exp.tx_height;
          lasers.push_back(tx);
        }
        if (!uavs.empty()) {
          const auto m = assign_lasers(uavs, lasers, c.laser.rx, c.platform, c.city,
                                       derive_seed({seed, 0x4153534eULL}));
          out[1] = static_cast<double>(m.size()) / static_cast<double>(uavs.size());
        }
      }
      return;
    }
    case Scenario::roadmap: {
      std::optional<MissionDraw> d;
      if (c.roadmap.include_travel) d = draw_mission(p, seed);
      std::size_t slot = 0;
      for (const auto& tech : p.techs) {
        out[slot++] = tech.energy_density;
        out[slot++] = tech_endurance(tech, c.platform);
        if (!c.roadmap.include_travel) continue;
        if (d->has_dock) {
          try {
            out[slot] = tech_endurance(tech, c.platform, d->plan, options);
          } catch (const InsufficientBattery&) {
          }
        }
        ++slot;
      }
      return;
    }
  }
}

inline MetricSummary summarize_slot(const MetricSlot& slot, const std::vector<std::vector<double>>& reps,
                                    std::size_t column) {
  std::vector<double> values;
  values.reserve(reps.size());
  for (const auto& r : reps)
    if (!std::isnan(r[column])) values.push_back(r[column]);
  MetricSummary m{slot.label, slot.metric, values.empty() ? empty_summary() : summarize(values), reps.size()};
  return m;
}

/// Share of feasible replications needing exactly k backups, for each observed k.
inline void append_backup_histogram(PointResult& point, const std::vector<std::vector<double>>& reps) {
  std::map<int, std::size_t> counts;
  std::size_t feasible = 0;
  for (const auto& r : reps) {
    if (std::isnan(r[0])) continue;
    ++feasible;
    ++counts[static_cast<int>(r[0])];
  }
  if (feasible == 0) return;
  for (const auto& [k, _] : counts) {
    std::vector<double> indicator;
    indicator.reserve(feasible);
    for (const auto& r : reps)
      if (!std::isnan(r[0])) indicator.push_back(static_cast<int>(r[0]) == k ? 1.0 : 0.0);
    point.metrics.push_back({"", "backups_eq_" + std::to_string(k), summarize(indicator), reps.size()});
  }
}

}  // namespace detail

inline unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

inline RunResult run(const ExperimentConfig& config) {
  const std::vector<SweepPoint> points = expand_sweep(config);
  const std::size_t reps = config.effective_replications();
  if (reps < 1) throw ConfigError("replications must be >= 1");

  std::vector<std::vector<detail::MetricSlot>> layouts;
  for (const auto& p : points) layouts.push_back(detail::metric_layout(p));

  const std::size_t tasks = points.size() * reps;
  std::vector<std::vector<double>> results(tasks);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_task = tasks;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      const std::size_t pi = t / reps;
      const std::size_t ri = t % reps;
      try {
        results[t].assign(layouts[pi].size(), detail::kNaN);
        detail::evaluate_replication(points[pi], derive_seed({config.master_seed, pi, ri}), results[t]);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (t < error_task) {
          error_task = t;
          error = std::make_exception_ptr(ModelError(
              detail::describe_point(config.sweep, points[pi].coords, pi) + ", replication " + std::to_string(ri) +
              ": " + e.what()));
        }
      }
    }
  };

  const unsigned threads = static_cast<unsigned>(
      std::min<std::size_t>(resolve_thread_count(config.threads), std::max<std::size_t>(tasks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  RunResult out;
  out.scenario = config.scenario;
  for (const auto& axis : config.sweep) out.axes.push_back(axis.path);
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const std::vector<std::vector<double>> point_reps(results.begin() + static_cast<std::ptrdiff_t>(pi * reps),
                                                      results.begin() + static_cast<std::ptrdiff_t>((pi + 1) * reps));
    PointResult pr{pi, points[pi].coords, points[pi].cfg, {}};
    for (std::size_t col = 0; col < layouts[pi].size(); ++col)
      pr.metrics.push_back(detail::summarize_slot(layouts[pi][col], point_reps, col));
    if (config.scenario == Scenario::backups) detail::append_backup_histogram(pr, point_reps);
    out.points.push_back(std::move(pr));
  }
  return out;
}

namespace detail {

inline void write_stats(std::ostream& os, const StatSummary& s) {
  os << s.n << ',' << csv::format_double(s.mean) << ',' << csv::format_double(s.std_dev) << ','
     << csv::format_double(s.ci95_low) << ',' << csv::format_double(s.ci95_high);
}

inline void write_laser_csv(std::ostream& os, const RunResult& result) {
  std::vector<std::size_t> extra;
  for (std::size_t a = 0; a < result.axes.size(); ++a)
    if (result.axes[a] != "laser.uav_height" && result.axes[a] != "city.laser_density") extra.push_back(a);
  const bool fleet = !result.points.empty() && result.points.front().cfg.laser.fleet_assignment;

  os << "uav_height,laser_density,tx_height";
  for (auto a : extra) os << ',' << result.axes[a];
  os << ",probability,ci_low,ci_high,n,std_dev";
  if (fleet) os << ",powered_fraction,powered_ci_low,powered_ci_high,powered_n";
  os << '\n';
  for (const auto& p : result.points) {
    const auto& c = p.cfg;
    const double tx_height = c.laser.tx_height > 0.0 ? c.laser.tx_height : c.city.rooftop_height_mean;
    os << csv::format_double(c.laser.uav_height) << ',' << csv::format_double(c.city.laser_density) << ','
       << csv::format_double(tx_height);
    for (auto a : extra) os << ',' << csv::format_double(p.coords[a]);
    const auto& s = p.find("charge_probability")->stats;
    os << ',' << csv::format_double(s.mean) << ',' << csv::format_double(s.ci95_low) << ','
       << csv::format_double(s.ci95_high) << ',' << s.n << ',' << csv::format_double(s.std_dev);
    if (fleet) {
      const auto& f = p.find("powered_fraction")->stats;
      os << ',' << csv::format_double(f.mean) << ',' << csv::format_double(f.ci95_low) << ','
         << csv::format_double(f.ci95_high) << ',' << f.n;
    }
    os << '\n';
  }
}

}  // namespace detail

/// Long-form CSV: one row per (sweep point, label, metric). The laser scenario
/// uses its own wide layout keyed on (uav_height, laser_density, tx_height).
inline void write_csv(std::ostream& os, const RunResult& result) {
  if (result.scenario == Scenario::laser) {
    detail::write_laser_csv(os, result);
    return;
  }
  for (const auto& axis : result.axes) os << axis << ',';
  os << "label,metric,n,mean,std_dev,ci95_low,ci95_high,feasible_fraction\n";
  for (const auto& p : result.points) {
    for (const auto& m : p.metrics) {
      for (double c : p.coords) os << csv::format_double(c) << ',';
      os << m.label << ',' << m.metric << ',';
      detail::write_stats(os, m.stats);
      os << ',' << csv::format_double(m.feasible_fraction()) << '\n';
    }
  }
}

inline std::string to_csv(const RunResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

}  // namespace uavsim
