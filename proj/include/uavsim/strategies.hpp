#pragma once

/// \file strategies.hpp
/// Docking-station continuity strategies. Fleet cycling keeps the hotspot
/// covered by rotating fully charged UAVs in; hotswapping keeps a single UAV
/// and accepts a coverage gap while it flies home for a fresh battery.

#include <cmath>

#include "energetics.hpp"

namespace uavsim {

enum class SwapMode { fleet_cycle, battery_hotswap };

struct SwapPolicy {
  SwapMode mode = SwapMode::fleet_cycle;
  double swap_duration = 60.0;    ///< s, hotswap only
  double recharge_power = 180.0;  ///< W, fleet cycling only

  void validate() const {
    detail::require_non_negative(swap_duration, "strategies.swap_duration");
    detail::require_positive(recharge_power, "strategies.recharge_power");
  }
};

struct CycleOutcome {
  double service_time = 0.0;  ///< s on station per sortie
  double downtime = 0.0;      ///< s the hotspot goes uncovered per cycle
  int backups_required = 0;   ///< fleet cycling only

  double duty_cycle() const { return service_time / (service_time + downtime); }
};

/// Full-depth constant-power recharge.
inline double recharge_time(const BatteryPack& pack, double recharge_power) {
  pack.validate();
  detail::require_positive(recharge_power, "recharge_power");
  return pack.capacity_joules() / recharge_power;
}

inline double recharge_time(const BatteryPack& pack) { return recharge_time(pack, pack.recharge_power); }

/// Time one UAV is away from the hotspot in fleet mode: fly home, recharge, fly back.
inline double fleet_turnaround(const UavPlatform& platform, const EnduranceResult& mission,
                               const SwapPolicy& policy) {
  return mission.return_time + recharge_time(platform.battery, policy.recharge_power) +
         mission.response_time;
}

/// Spares needed so that one is always ready while a UAV is away for
/// `turnaround` seconds and each sortie lasts `hover_time`.
inline int backups_for_turnaround(double turnaround, double hover_time) {
  detail::require_non_negative(turnaround, "turnaround");
  detail::require_positive(hover_time, "hover_time");
  return static_cast<int>(std::ceil(turnaround / hover_time));
}

/// Fleet cycling with seamless handovers: the hotspot is never uncovered, and
/// enough spares are kept charged to fill each UAV's turnaround.
inline CycleOutcome fleet_cycle_outcome(const UavPlatform& platform, const MissionPlan& plan,
                                        const SwapPolicy& policy, const EnduranceOptions& options = {}) {
  policy.validate();
  const EnduranceResult mission = mission_endurance(platform, plan, options);
  if (!(mission.hover_time > 0.0)) throw InsufficientBattery(0.0);
  const double turnaround = fleet_turnaround(platform, mission, policy);
  CycleOutcome out;
  out.service_time = mission.hover_time;
  out.downtime = 0.0;
  out.backups_required = backups_for_turnaround(turnaround, mission.hover_time);
  return out;
}

inline int backup_count(const UavPlatform& platform, const MissionPlan& plan, const SwapPolicy& policy,
                        const EnduranceOptions& options = {}) {
  return fleet_cycle_outcome(platform, plan, policy, options).backups_required;
}

/// One UAV per hotspot; the gap is return trip + swap + outbound trip to the
/// same dock it left from.
inline CycleOutcome hotswap_downtime(const UavPlatform& platform, const MissionPlan& plan,
                                     const SwapPolicy& policy, const EnduranceOptions& options = {}) {
  policy.validate();
  const EnduranceResult mission = mission_endurance(platform, plan, options);
  CycleOutcome out;
  out.service_time = mission.hover_time;
  out.downtime = mission.return_time + policy.swap_duration + mission.response_time;
  out.backups_required = 0;
  return out;
}

}  // namespace uavsim
