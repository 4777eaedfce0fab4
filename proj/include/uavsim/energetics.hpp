#pragma once

/// \file energetics.hpp
/// Constant-power flight phases: every phase draws a fixed power at a fixed
/// speed, so its energy is (extent / speed) * power. A mission is an outbound
/// leg from the dock to the operating point, a hover, and the return leg; the
/// hover lasts until only the return-leg energy is left.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "csv.hpp"

namespace uavsim {

struct BatteryPack {
  double energy_density = 250.0;  ///< Wh/kg
  double mass = 0.4;              ///< kg
  double recharge_power = 180.0;  ///< W

  void validate() const {
    detail::require_positive(energy_density, "battery.energy_density");
    detail::require_positive(mass, "battery.mass");
    detail::require_positive(recharge_power, "battery.recharge_power");
  }

  double capacity_joules() const { return energy_density * mass * 3600.0; }
};

inline double battery_capacity(const BatteryPack& pack) {
  pack.validate();
  return pack.capacity_joules();
}

enum class PhaseKind { ascend, descend, cruise, hover };

inline const char* to_string(PhaseKind k) {
  switch (k) {
    case PhaseKind::ascend: return "ascend";
    case PhaseKind::descend: return "descend";
    case PhaseKind::cruise: return "cruise";
    case PhaseKind::hover: return "hover";
  }
  return "?";
}

/// Rotor-wing platform, one (speed, power) pair per phase.
struct UavPlatform {
  double v_horizontal = 8.0;  ///< m/s
  double v_ascent = 2.0;
  double v_descent = 1.5;
  double p_horizontal = 206.02;  ///< W
  double p_ascent = 249.01;
  double p_descent = 212.46;
  double p_hover = 221.27;
  BatteryPack battery;

  void validate() const {
    using detail::require_positive;
    require_positive(v_horizontal, "platform.v_horizontal");
    require_positive(v_ascent, "platform.v_ascent");
    require_positive(v_descent, "platform.v_descent");
    require_positive(p_horizontal, "platform.p_horizontal");
    require_positive(p_ascent, "platform.p_ascent");
    require_positive(p_descent, "platform.p_descent");
    require_positive(p_hover, "platform.p_hover");
    battery.validate();
  }

  double power(PhaseKind k) const {
    switch (k) {
      case PhaseKind::ascend: return p_ascent;
      case PhaseKind::descend: return p_descent;
      case PhaseKind::cruise: return p_horizontal;
      case PhaseKind::hover: return p_hover;
    }
    return 0.0;
  }

  /// Speed of a moving phase; hover has none.
  double velocity(PhaseKind k) const {
    switch (k) {
      case PhaseKind::ascend: return v_ascent;
      case PhaseKind::descend: return v_descent;
      case PhaseKind::cruise: return v_horizontal;
      case PhaseKind::hover: break;
    }
    throw InvalidParameter("hover has no velocity");
  }
};

/// Seconds spent in a phase. Moving phases take a distance, hover a duration.
inline double phase_duration(const UavPlatform& platform, PhaseKind kind, double extent) {
  detail::require_non_negative(extent, "phase extent");
  if (kind == PhaseKind::hover) return extent;
  return extent / platform.velocity(kind);
}

inline double phase_energy(const UavPlatform& platform, PhaseKind kind, double extent) {
  return phase_duration(platform, kind, extent) * platform.power(kind);
}

struct Phase {
  PhaseKind kind = PhaseKind::cruise;
  double extent = 0.0;  ///< meters, or seconds for hover
};

/// Outbound phases, a single hover marker (extent filled in by the endurance
/// computation), then the return phases.
struct MissionPlan {
  double dock_height = 0.0;
  double operate_height = 0.0;
  double horizontal_distance = 0.0;
  std::vector<Phase> phases;

  std::size_t hover_index() const {
    std::size_t found = phases.size();
    for (std::size_t i = 0; i < phases.size(); ++i) {
      if (phases[i].kind != PhaseKind::hover) continue;
      if (found != phases.size()) throw InvalidParameter("mission plan has more than one hover phase");
      found = i;
    }
    if (found == phases.size()) throw InvalidParameter("mission plan has no hover phase");
    return found;
  }

  void validate() const {
    detail::require_non_negative(dock_height, "plan.dock_height");
    detail::require_non_negative(operate_height, "plan.operate_height");
    detail::require_non_negative(horizontal_distance, "plan.horizontal_distance");
    const std::size_t h = hover_index();
    double rise_out = 0.0, rise_back = 0.0;
    double cruise_out = 0.0, cruise_back = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i) {
      detail::require_non_negative(phases[i].extent, "phase extent");
      double& rise = i < h ? rise_out : rise_back;
      double& cruise = i < h ? cruise_out : cruise_back;
      switch (phases[i].kind) {
        case PhaseKind::ascend: rise += phases[i].extent; break;
        case PhaseKind::descend: rise -= phases[i].extent; break;
        case PhaseKind::cruise: cruise += phases[i].extent; break;
        case PhaseKind::hover: break;
      }
    }
    const double delta = operate_height - dock_height;
    const double tol = 1e-9 * (1.0 + std::fabs(dock_height) + std::fabs(operate_height));
    if (std::fabs(rise_out - delta) > tol || std::fabs(rise_back + delta) > tol)
      throw InvalidParameter("mission phases do not connect dock and operating heights");
    const double dtol = 1e-9 * (1.0 + horizontal_distance);
    if (std::fabs(cruise_out - horizontal_distance) > dtol ||
        std::fabs(cruise_back - horizontal_distance) > dtol)
      throw InvalidParameter("mission cruise legs do not match horizontal distance");
  }
};

/// Sequential legs: climb, then cruise, then descend, in both directions.
inline MissionPlan plan_mission(double dock_height, double operate_height, double horizontal_distance) {
  MissionPlan plan{dock_height, operate_height, horizontal_distance, {}};
  const double up = std::max(0.0, operate_height - dock_height);
  const double down = std::max(0.0, dock_height - operate_height);
  auto add = [&plan](PhaseKind k, double extent) {
    if (extent > 0.0) plan.phases.push_back({k, extent});
  };
  add(PhaseKind::ascend, up);
  add(PhaseKind::cruise, horizontal_distance);
  add(PhaseKind::descend, down);
  plan.phases.push_back({PhaseKind::hover, 0.0});
  add(PhaseKind::ascend, down);
  add(PhaseKind::cruise, horizontal_distance);
  add(PhaseKind::descend, up);
  plan.validate();
  return plan;
}

struct EnduranceOptions {
  double reserve_fraction = 0.0;  ///< share of capacity never spent
  double altitude_cap = 120.0;    ///< flag only, heights are never clamped
};

struct EnduranceResult {
  double hover_time = 0.0;       ///< s
  double outbound_energy = 0.0;  ///< J
  double return_energy = 0.0;    ///< J
  double response_time = 0.0;    ///< s, dock to operating point
  double return_time = 0.0;      ///< s, operating point back to dock
  bool exceeds_altitude_cap = false;
};

inline EnduranceResult mission_endurance(const UavPlatform& platform, const MissionPlan& plan,
                                         const EnduranceOptions& options = {}) {
  platform.validate();
  plan.validate();
  detail::require_finite(options.reserve_fraction, "reserve_fraction");
  detail::require(options.reserve_fraction >= 0.0 && options.reserve_fraction < 1.0,
                  "reserve_fraction must lie in [0, 1)");

  const std::size_t h = plan.hover_index();
  EnduranceResult r;
  for (std::size_t i = 0; i < plan.phases.size(); ++i) {
    if (i == h) continue;
    const auto& p = plan.phases[i];
    const double e = phase_energy(platform, p.kind, p.extent);
    const double t = phase_duration(platform, p.kind, p.extent);
    if (i < h) {
      r.outbound_energy += e;
      r.response_time += t;
    } else {
      r.return_energy += e;
      r.return_time += t;
    }
  }
  const double usable = platform.battery.capacity_joules() * (1.0 - options.reserve_fraction);
  const double travel = r.outbound_energy + r.return_energy;
  if (usable < travel) throw InsufficientBattery(travel - usable);
  r.hover_time = (usable - travel) / platform.p_hover;
  r.exceeds_altitude_cap = plan.operate_height > options.altitude_cap;
  return r;
}

/// Endurance with no travel at all: the whole pack spent hovering.
inline double pure_hover_endurance(const UavPlatform& platform) {
  platform.validate();
  return platform.battery.capacity_joules() / platform.p_hover;
}

inline constexpr double kMinOperateHeight = 15.0;
inline constexpr double kMaxOperateHeight = 500.0;

/// Height at which a downtilted antenna of the given full beamwidth
/// illuminates a disk of the given radius, clamped to [15, 500] m.
inline double optimum_height(double hotspot_radius, double beamwidth_deg) {
  detail::require_positive(hotspot_radius, "hotspot radius");
  detail::require_finite(beamwidth_deg, "beamwidth");
  detail::require(beamwidth_deg > 0.0 && beamwidth_deg < 180.0, "beamwidth must lie in (0, 180) degrees");
  const double half_angle = beamwidth_deg * kPi / 360.0;
  return std::clamp(hotspot_radius / std::tan(half_angle), kMinOperateHeight, kMaxOperateHeight);
}

/// User-supplied (radius, beamwidth) -> height grid with bilinear
/// interpolation; queries outside the grid take the nearest edge value.
class HeightTable {
 public:
  static HeightTable from_csv(std::istream& in) {
    std::map<std::pair<double, double>, double> cells;
    for (const auto& row : csv::read_rows(in, 3, "height table")) {
      const double r = csv::parse_double(row[0], "radius_m");
      const double b = csv::parse_double(row[1], "beamwidth_deg");
      const double h = csv::parse_double(row[2], "height_m");
      detail::require_non_negative(h, "height_m");
      if (!cells.emplace(std::pair{r, b}, h).second)
        throw InvalidParameter("height table: duplicate (radius, beamwidth) entry");
    }
    HeightTable t;
    for (const auto& [key, _] : cells) {
      t.radii_.push_back(key.first);
      t.beamwidths_.push_back(key.second);
    }
    auto unique_sorted = [](std::vector<double>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    unique_sorted(t.radii_);
    unique_sorted(t.beamwidths_);
    if (t.radii_.empty()) throw InvalidParameter("height table is empty");
    if (cells.size() != t.radii_.size() * t.beamwidths_.size())
      throw InvalidParameter("height table must cover a full radius x beamwidth grid");
    t.heights_.reserve(cells.size());
    for (double r : t.radii_)
      for (double b : t.beamwidths_) t.heights_.push_back(cells.at({r, b}));
    return t;
  }

  static HeightTable from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open height table '" + path + "'");
    return from_csv(in);
  }

  double lookup(double radius, double beamwidth_deg) const {
    const auto [i0, i1, tr] = bracket(radii_, radius);
    const auto [j0, j1, tb] = bracket(beamwidths_, beamwidth_deg);
    const double h00 = at(i0, j0), h01 = at(i0, j1), h10 = at(i1, j0), h11 = at(i1, j1);
    return (1 - tr) * ((1 - tb) * h00 + tb * h01) + tr * ((1 - tb) * h10 + tb * h11);
  }

 private:
  struct Bracket {
    std::size_t lo, hi;
    double t;
  };

  static Bracket bracket(const std::vector<double>& axis, double v) {
    if (axis.size() == 1 || v <= axis.front()) return {0, 0, 0.0};
    if (v >= axis.back()) return {axis.size() - 1, axis.size() - 1, 0.0};
    const auto it = std::upper_bound(axis.begin(), axis.end(), v);
    const auto hi = static_cast<std::size_t>(it - axis.begin());
    const auto lo = hi - 1;
    return {lo, hi, (v - axis[lo]) / (axis[hi] - axis[lo])};
  }

  double at(std::size_t i, std::size_t j) const { return heights_[i * beamwidths_.size() + j]; }

  std::vector<double> radii_;
  std::vector<double> beamwidths_;
  std::vector<double> heights_;
};

/// Operating-height selection: the cone rule unless a lookup table is loaded.
struct HeightRule {
  std::optional<HeightTable> table;

  double height(double hotspot_radius, double beamwidth_deg) const {
    if (table) return table->lookup(hotspot_radius, beamwidth_deg);
    return optimum_height(hotspot_radius, beamwidth_deg);
  }
};

}  // namespace uavsim
