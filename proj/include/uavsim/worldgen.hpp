#pragma once

/// \file worldgen.hpp
/// Random urban environment: docking stations, demand hotspots and laser
/// transmitters scattered as independent planar Poisson point processes over
/// a square window, plus the building-blockage line-of-sight model.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core.hpp"
#include "random.hpp"

namespace uavsim {

/// City statistics. Densities are per km^2, lengths in meters.
struct CityModel {
  double dock_density = 1.0;
  double hotspot_density = 5.0;
  double laser_density = 1.0;
  double rooftop_height_mean = 30.0;
  double building_cover_ratio = 0.3;   ///< alpha: fraction of land covered by buildings
  double building_density = 300.0;     ///< beta: buildings per km^2
  double building_height_scale = 20.0; ///< gamma: Rayleigh scale of building heights
  double hotspot_radius_min = 20.0;
  double hotspot_radius_max = 200.0;
  double region_side = 10000.0;
  /// Query points (hotspots used for missions) stay this far from the window border.
  double edge_margin = 2500.0;

  void validate() const {
    using namespace detail;
    require_non_negative(dock_density, "city.dock_density");
    require_non_negative(hotspot_density, "city.hotspot_density");
    require_non_negative(laser_density, "city.laser_density");
    require_positive(rooftop_height_mean, "city.rooftop_height_mean");
    require_finite(building_cover_ratio, "city.building_cover_ratio");
    require(building_cover_ratio > 0.0 && building_cover_ratio < 1.0,
            "city.building_cover_ratio must lie in (0, 1)");
    require_non_negative(building_density, "city.building_density");
    require_positive(building_height_scale, "city.building_height_scale");
    require_positive(hotspot_radius_min, "city.hotspot_radius_min");
    require_positive(hotspot_radius_max, "city.hotspot_radius_max");
    require(hotspot_radius_min <= hotspot_radius_max,
            "city.hotspot_radius_min must not exceed city.hotspot_radius_max");
    require_positive(region_side, "city.region_side");
    require_non_negative(edge_margin, "city.edge_margin");
    require(2.0 * edge_margin < region_side, "city.edge_margin leaves no interior window");
  }

  double region_area_km2() const { return (region_side / 1000.0) * (region_side / 1000.0); }

  /// Rayleigh scale giving the configured mean rooftop height.
  double rooftop_height_scale() const { return rooftop_height_mean / std::sqrt(kPi / 2.0); }
};

struct Hotspot {
  Point3 center;  ///< z = 0
  double radius = 0.0;
};

struct WorldRealization {
  std::vector<Point3> docks;   ///< z = rooftop height
  std::vector<Hotspot> hotspots;
  std::vector<Point3> lasers;  ///< z = rooftop height
  std::uint64_t seed = 0;
};

namespace detail {

enum class Stream : std::uint64_t { docks = 1, hotspots = 2, lasers = 3 };

inline std::vector<Point3> sample_rooftop_points(const CityModel& city, double density, Rng& rng) {
  const auto count = rng.poisson(density * city.region_area_km2());
  const double scale = city.rooftop_height_scale();
  std::vector<Point3> points;
  points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double x = rng.uniform(0.0, city.region_side);
    const double y = rng.uniform(0.0, city.region_side);
    points.push_back({x, y, rng.rayleigh(scale)});
  }
  return points;
}

}  // namespace detail

/// Draws one realization. Each point class has its own sub-stream, so changing
/// one density leaves the other classes untouched for the same seed.
inline WorldRealization sample_world(const CityModel& city, std::uint64_t seed) {
  city.validate();
  WorldRealization world;
  world.seed = seed;

  Rng dock_rng(derive_seed({seed, static_cast<std::uint64_t>(detail::Stream::docks)}));
  world.docks = detail::sample_rooftop_points(city, city.dock_density, dock_rng);

  Rng hotspot_rng(derive_seed({seed, static_cast<std::uint64_t>(detail::Stream::hotspots)}));
  const auto hotspot_count = hotspot_rng.poisson(city.hotspot_density * city.region_area_km2());
  world.hotspots.reserve(hotspot_count);
  for (std::uint64_t i = 0; i < hotspot_count; ++i) {
    Hotspot h;
    h.center.x = hotspot_rng.uniform(0.0, city.region_side);
    h.center.y = hotspot_rng.uniform(0.0, city.region_side);
    h.radius = hotspot_rng.uniform(city.hotspot_radius_min, city.hotspot_radius_max);
    world.hotspots.push_back(h);
  }

  Rng laser_rng(derive_seed({seed, static_cast<std::uint64_t>(detail::Stream::lasers)}));
  world.lasers = detail::sample_rooftop_points(city, city.laser_density, laser_rng);
  return world;
}

struct NearestResult {
  std::size_t index = 0;
  double distance = 0.0;  ///< horizontal, meters
};

/// Candidate closest to `point` in the horizontal plane; ties go to the lowest index.
inline NearestResult nearest(const Point3& point, std::span<const Point3> candidates) {
  if (candidates.empty()) throw InvalidParameter("nearest: empty candidate list");
  NearestResult best{0, horizontal_distance(point, candidates[0])};
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = horizontal_distance(point, candidates[i]);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

inline bool in_interior(const CityModel& city, const Point3& p) {
  const double lo = city.edge_margin;
  const double hi = city.region_side - city.edge_margin;
  return p.x >= lo && p.x <= hi && p.y >= lo && p.y <= hi;
}

/// Uniform point of the interior window, at ground level.
inline Point3 sample_interior_point(const CityModel& city, Rng& rng) {
  const double lo = city.edge_margin;
  const double hi = city.region_side - city.edge_margin;
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), 0.0};
}

/// A hotspot chosen uniformly among those inside the interior window. When the
/// realization has none there, a fresh hotspot is drawn from the same law.
inline Hotspot choose_interior_hotspot(const WorldRealization& world, const CityModel& city,
                                       Rng& rng) {
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < world.hotspots.size(); ++i)
    if (in_interior(city, world.hotspots[i].center)) interior.push_back(i);
  if (interior.empty()) {
    Hotspot h;
    h.center = sample_interior_point(city, rng);
    h.radius = rng.uniform(city.hotspot_radius_min, city.hotspot_radius_max);
    return h;
  }
  return world.hotspots[interior[rng.below(interior.size())]];
}

/// Probability that no building blocks the segment tx -> rx.
///
/// The link crosses b = floor(r * sqrt(alpha * beta)) buildings (r in km). The
/// n-th building sits at fraction (n + 1/2) / b of the way from tx, where the
/// link height h_n interpolates linearly between the endpoints, and clears the
/// link with probability 1 - exp(-h_n^2 / (2 gamma^2)).
inline double los_probability(const Point3& tx, const Point3& rx, const CityModel& city) {
  detail::require_point(tx, "tx");
  detail::require_point(rx, "rx");
  if (tx == rx) throw InvalidParameter("los_probability: tx and rx coincide");

  const double r_km = horizontal_distance(tx, rx) / 1000.0;
  const double crossings =
      std::floor(r_km * std::sqrt(city.building_cover_ratio * city.building_density));
  if (crossings < 1.0) return 1.0;

  const auto b = static_cast<std::size_t>(crossings);
  const double two_gamma_sq = 2.0 * city.building_height_scale * city.building_height_scale;
  double p = 1.0;
  for (std::size_t n = 0; n < b; ++n) {
    const double t = (static_cast<double>(n) + 0.5) / static_cast<double>(b);
    const double h = tx.z + t * (rx.z - tx.z);
    p *= -std::expm1(-(h * h) / two_gamma_sq);
    if (p == 0.0) break;
  }
  return p;
}

}  // namespace uavsim
