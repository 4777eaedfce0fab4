// Received laser power against range for the default beam and panel, and the
// charging probability at a few hover heights.

#include <cstdio>

#include <uavsim/uavsim.hpp>

int main() {
  using namespace uavsim;

  const UavPlatform platform;
  const LaserTransmitter tx;
  const PvReceiver rx;
  for (double d = 0.0; d <= 800.0; d += 100.0) {
    const double p = received_power(tx, rx, d);
    std::printf("%6.0f m  %7.1f W  %s\n", d, p, p >= platform.p_hover ? "sustains hover" : "");
  }

  const CityModel city;
  for (double h : {20.0, 60.0, 120.0, 200.0}) {
    const auto est = charge_probability(city, h, platform, rx, tx, 2000, 7);
    std::printf("uav at %5.0f m: P(charged) = %.3f [%.3f, %.3f]\n", h, est.probability, est.summary.ci95_low,
                est.summary.ci95_high);
  }
}
