// Walks one mission by hand: a 30 m rooftop dock, a 50 m hotspot served with a
// 60 degree antenna, 500 m away. Prints the leg energies, hover time and the
// two continuity strategies for that geometry.

#include <cstdio>

#include <uavsim/uavsim.hpp>

int main() {
  using namespace uavsim;

  const UavPlatform platform;  // baseline quadrotor, 250 Wh/kg x 0.4 kg pack
  const double height = optimum_height(50.0, 60.0);
  const MissionPlan plan = plan_mission(30.0, height, 500.0);

  std::printf("operating height      %8.2f m\n", height);
  for (const auto& phase : plan.phases)
    if (phase.kind != PhaseKind::hover)
      std::printf("  %-8s %8.2f -> %9.1f J\n", to_string(phase.kind), phase.extent,
                  phase_energy(platform, phase.kind, phase.extent));

  const EnduranceResult r = mission_endurance(platform, plan);
  std::printf("outbound energy       %8.1f J\n", r.outbound_energy);
  std::printf("return energy         %8.1f J\n", r.return_energy);
  std::printf("hover time            %8.1f s (%.1f min)\n", r.hover_time, r.hover_time / 60.0);
  std::printf("response time         %8.1f s\n", r.response_time);

  SwapPolicy fleet;
  std::printf("backups (fleet, 180 W) %7d\n", backup_count(platform, plan, fleet));

  SwapPolicy swap{SwapMode::battery_hotswap, 60.0, 180.0};
  const CycleOutcome hs = hotswap_downtime(platform, plan, swap);
  std::printf("hotswap downtime      %8.1f s, duty cycle %.3f\n", hs.downtime, hs.duty_cycle());
}
