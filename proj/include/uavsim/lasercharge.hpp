#pragma once

/// \file lasercharge.hpp
/// Laser power beaming from rooftop transmitters to a hovering UAV's PV panel.
/// A beam is only lit with a clear line of sight, and a transmitter can track
/// one UAV at a time.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "energetics.hpp"
#include "random.hpp"
#include "stats.hpp"
#include "worldgen.hpp"

namespace uavsim {

struct LaserTransmitter {
  Point3 position;
  double tx_power = 1000.0;          ///< W optical
  double beam_waist_diameter = 0.1;  ///< m
  double divergence = 1e-3;          ///< rad, full angle
  double attenuation = 1e-4;         ///< 1/m

  void validate() const {
    detail::require_point(position, "laser.position");
    detail::require_positive(tx_power, "laser.tx_power");
    detail::require_non_negative(beam_waist_diameter, "laser.beam_waist_diameter");
    detail::require_positive(divergence, "laser.divergence");
    detail::require_non_negative(attenuation, "laser.attenuation");
  }
};

struct PvReceiver {
  double panel_diameter = 0.5;         ///< m
  double conversion_efficiency = 0.4;  ///< optical -> electrical

  void validate() const {
    detail::require_positive(panel_diameter, "laser.panel_diameter");
    detail::require_finite(conversion_efficiency, "laser.conversion_efficiency");
    detail::require(conversion_efficiency > 0.0 && conversion_efficiency <= 1.0,
                    "laser.conversion_efficiency must lie in (0, 1]");
  }
};

struct ChargeVerdict {
  double received_power = 0.0;  ///< W electrical
  bool los = false;
  bool sustained = false;
};

/// Electrical power delivered at range `distance`: extinction along the path
/// times the share of the spread beam the panel intercepts.
inline double received_power(const LaserTransmitter& tx, const PvReceiver& rx, double distance) {
  tx.validate();
  rx.validate();
  detail::require_non_negative(distance, "distance");
  const double spot = tx.beam_waist_diameter + distance * tx.divergence;
  const double capture = spot > rx.panel_diameter ? std::pow(rx.panel_diameter / spot, 2) : 1.0;
  return tx.tx_power * rx.conversion_efficiency * std::exp(-tx.attenuation * distance) * capture;
}

/// Verdict once the line-of-sight outcome is known. Blocked beams are shut off.
inline ChargeVerdict verdict_given_los(double power, bool los, const UavPlatform& platform) {
  ChargeVerdict v;
  v.los = los;
  v.received_power = los ? power : 0.0;
  v.sustained = los && v.received_power >= platform.p_hover;
  return v;
}

/// Samples line of sight from the building model and evaluates the beam.
inline ChargeVerdict charge_verdict(const Point3& uav, const LaserTransmitter& tx, const PvReceiver& rx,
                                    const UavPlatform& platform, const CityModel& city,
                                    std::uint64_t seed) {
  Rng rng(seed);
  const bool los = rng.bernoulli(los_probability(tx.position, uav, city));
  return verdict_given_los(received_power(tx, rx, distance(tx.position, uav)), los, platform);
}

/// Parameters shared by every replication of a charging experiment.
struct LaserExperiment {
  PvReceiver rx;
  LaserTransmitter tx_template;  ///< position ignored
  double uav_height = 100.0;
  /// Fixed transmitter height; when absent transmitters keep their rooftop heights.
  std::optional<double> tx_height;
};

/// One replication: a fresh world, a UAV above a random interior hotspot, and
/// the nearest transmitter (in the horizontal plane) trying to power it.
inline ChargeVerdict laser_replication(const CityModel& city, const LaserExperiment& exp,
                                       const UavPlatform& platform, std::uint64_t seed) {
  const WorldRealization world = sample_world(city, seed);
  Rng rng(derive_seed({seed, 0x4c41534552ULL}));
  const Hotspot spot = choose_interior_hotspot(world, city, rng);
  if (world.lasers.empty()) return {};
  const Point3 uav{spot.center.x, spot.center.y, exp.uav_height};
  const auto closest = nearest(uav, world.lasers);
  LaserTransmitter tx = exp.tx_template;
  tx.position = world.lasers[closest.index];
  if (exp.tx_height) tx.position.z = *exp.tx_height;
  if (tx.position == uav) return verdict_given_los(received_power(tx, exp.rx, 0.0), true, platform);
  return charge_verdict(uav, tx, exp.rx, platform, city, derive_seed({seed, 0x4c41534552ULL, 1}));
}

struct ChargeProbability {
  double probability = 0.0;
  StatSummary summary;
  bool no_transmitters = false;  ///< laser density is zero; probability is trivially 0
};

inline ChargeProbability charge_probability(const CityModel& city, double uav_height,
                                            const UavPlatform& platform, const PvReceiver& rx,
                                            const LaserTransmitter& tx_template, std::size_t replications,
                                            std::uint64_t seed, std::optional<double> tx_height = {}) {
  city.validate();
  detail::require(replications >= 1, "replications must be >= 1");
  detail::require_non_negative(uav_height, "uav_height");
  const LaserExperiment exp{rx, tx_template, uav_height, tx_height};
  std::vector<double> hits(replications, 0.0);
  for (std::size_t r = 0; r < replications; ++r)
    hits[r] = laser_replication(city, exp, platform, derive_seed({seed, r})).sustained ? 1.0 : 0.0;
  ChargeProbability out;
  out.summary = summarize(hits);
  out.probability = out.summary.mean;
  out.no_transmitters = city.laser_density == 0.0;
  return out;
}

/// A UAV-transmitter pair whose beam would sustain hover.
struct LaserLink {
  std::size_t uav = 0;
  std::size_t laser = 0;
  double distance = 0.0;
};

/// Every sustaining pair. Line of sight for pair (i, j) is drawn from a
/// sub-seed of (seed, i, j), so the set does not depend on evaluation order.
inline std::vector<LaserLink> feasible_links(std::span<const Point3> uavs,
                                             std::span<const LaserTransmitter> lasers, const PvReceiver& rx,
                                             const UavPlatform& platform, const CityModel& city,
                                             std::uint64_t seed) {
  std::vector<LaserLink> links;
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    for (std::size_t j = 0; j < lasers.size(); ++j) {
      const double d = distance(lasers[j].position, uavs[i]);
      ChargeVerdict v;
      if (d == 0.0)
        v = verdict_given_los(received_power(lasers[j], rx, 0.0), true, platform);
      else
        v = charge_verdict(uavs[i], lasers[j], rx, platform, city, derive_seed({seed, i, j}));
      if (v.sustained) links.push_back({i, j, d});
    }
  }
  return links;
}

struct LaserMatching {
  std::vector<std::optional<std::size_t>> laser_of;  ///< per UAV
  std::vector<std::size_t> unpowered;                ///< UAV indices without a laser

  std::size_t size() const {
    return static_cast<std::size_t>(
        std::count_if(laser_of.begin(), laser_of.end(), [](const auto& l) { return l.has_value(); }));
  }
};

/// Greedy maximal matching: shortest link first, ties by (uav, laser) index.
inline LaserMatching greedy_matching(std::size_t uav_count, std::size_t laser_count,
                                     std::vector<LaserLink> links) {
  std::sort(links.begin(), links.end(), [](const LaserLink& a, const LaserLink& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.uav != b.uav) return a.uav < b.uav;
    return a.laser < b.laser;
  });
  LaserMatching m;
  m.laser_of.assign(uav_count, std::nullopt);
  std::vector<bool> laser_busy(laser_count, false);
  for (const auto& link : links) {
    if (link.uav >= uav_count || link.laser >= laser_count)
      throw InvalidParameter("laser link refers to an unknown UAV or transmitter");
    if (m.laser_of[link.uav] || laser_busy[link.laser]) continue;
    m.laser_of[link.uav] = link.laser;
    laser_busy[link.laser] = true;
  }
  for (std::size_t i = 0; i < uav_count; ++i)
    if (!m.laser_of[i]) m.unpowered.push_back(i);
  return m;
}

inline LaserMatching assign_lasers(std::span<const Point3> uavs, std::span<const LaserTransmitter> lasers,
                                   const PvReceiver& rx, const UavPlatform& platform, const CityModel& city,
                                   std::uint64_t seed) {
  return greedy_matching(uavs.size(), lasers.size(), feasible_links(uavs, lasers, rx, platform, city, seed));
}

}  // namespace uavsim
