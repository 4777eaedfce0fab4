#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <uavsim/random.hpp>
#include <uavsim/stats.hpp>
#include <uavsim/worldgen.hpp>

using namespace uavsim;

namespace {

CityModel docks_only(double density) {
  CityModel c;
  c.dock_density = density;
  c.hotspot_density = 0.0;
  c.laser_density = 0.0;
  return c;
}

}  // namespace

TEST(SampleWorld, ZeroIntensityGivesNoPoints) {
  const auto w = sample_world(docks_only(0.0), 12);
  EXPECT_TRUE(w.docks.empty());
  EXPECT_TRUE(w.hotspots.empty());
  EXPECT_TRUE(w.lasers.empty());
}

TEST(SampleWorld, IdenticalSeedsIdenticalWorlds) {
  const CityModel city;
  const auto a = sample_world(city, 77);
  const auto b = sample_world(city, 77);
  ASSERT_EQ(a.docks.size(), b.docks.size());
  for (std::size_t i = 0; i < a.docks.size(); ++i) EXPECT_EQ(a.docks[i], b.docks[i]);
  ASSERT_EQ(a.hotspots.size(), b.hotspots.size());
  for (std::size_t i = 0; i < a.hotspots.size(); ++i) {
    EXPECT_EQ(a.hotspots[i].center, b.hotspots[i].center);
    EXPECT_EQ(a.hotspots[i].radius, b.hotspots[i].radius);
  }
  const auto c = sample_world(city, 78);
  EXPECT_FALSE(!c.docks.empty() && !a.docks.empty() && c.docks[0] == a.docks[0]);
}

TEST(SampleWorld, ClassesUseIndependentStreams) {
  CityModel a;
  CityModel b = a;
  b.laser_density = 4.0;
  const auto wa = sample_world(a, 5);
  const auto wb = sample_world(b, 5);
  ASSERT_EQ(wa.docks.size(), wb.docks.size());
  for (std::size_t i = 0; i < wa.docks.size(); ++i) EXPECT_EQ(wa.docks[i], wb.docks[i]);
}

TEST(SampleWorld, MeanCountIsDensityTimesArea) {
  const CityModel city = docks_only(1.0);  // 10 x 10 km -> 100 expected
  double total = 0.0;
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) total += static_cast<double>(sample_world(city, s).docks.size());
  EXPECT_NEAR(total / seeds, 100.0, 4.0 * std::sqrt(100.0 / seeds));
}

TEST(SampleWorld, PointsRespectSupports) {
  CityModel city;
  city.hotspot_radius_min = 40.0;
  city.hotspot_radius_max = 90.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto w = sample_world(city, s);
    for (const auto& p : w.docks) {
      EXPECT_GE(p.x, 0.0);
      EXPECT_LT(p.x, city.region_side);
      EXPECT_GE(p.y, 0.0);
      EXPECT_LT(p.y, city.region_side);
      EXPECT_GE(p.z, 0.0);
    }
    for (const auto& h : w.hotspots) {
      EXPECT_EQ(h.center.z, 0.0);
      EXPECT_GE(h.radius, 40.0);
      EXPECT_LE(h.radius, 90.0);
    }
  }
}

TEST(SampleWorld, RooftopScaleAndMean) {
  CityModel city;
  EXPECT_NEAR(city.rooftop_height_scale(), 23.9365, 1e-4);
  Rng rng(2024);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += rng.rayleigh(city.rooftop_height_scale());
  // Rayleigh sd = scale * sqrt((4 - pi) / 2) ~ 15.7 m; SE ~ 0.05 m.
  EXPECT_NEAR(sum / n, 30.0, 0.25);
}

TEST(SampleWorld, RejectsInvalidCity) {
  CityModel c;
  c.dock_density = -1.0;
  EXPECT_THROW(sample_world(c, 1), InvalidParameter);
  c = CityModel{};
  c.building_cover_ratio = 1.0;
  EXPECT_THROW(sample_world(c, 1), InvalidParameter);
  c = CityModel{};
  c.hotspot_radius_min = 300.0;
  EXPECT_THROW(sample_world(c, 1), InvalidParameter);
  c = CityModel{};
  c.rooftop_height_mean = std::nan("");
  EXPECT_THROW(sample_world(c, 1), InvalidParameter);
  c = CityModel{};
  c.edge_margin = 6000.0;
  EXPECT_THROW(sample_world(c, 1), InvalidParameter);
}

TEST(Nearest, ThreeFourFive) {
  const std::vector<Point3> c{{3.0, 4.0, 17.0}};
  const auto r = nearest({0, 0, 0}, c);
  EXPECT_EQ(r.index, 0u);
  EXPECT_DOUBLE_EQ(r.distance, 5.0);
}

TEST(Nearest, CoincidentCandidate) {
  const std::vector<Point3> c{{9, 9, 0}, {1, 2, 30}};
  const auto r = nearest({1, 2, 0}, c);
  EXPECT_EQ(r.index, 1u);
  EXPECT_EQ(r.distance, 0.0);
}

TEST(Nearest, TiesGoToLowestIndex) {
  const std::vector<Point3> c{{5, 0, 0}, {-5, 0, 0}, {0, 5, 0}};
  EXPECT_EQ(nearest({0, 0, 0}, c).index, 0u);
}

TEST(Nearest, EmptyCandidatesRejected) {
  EXPECT_THROW(nearest({0, 0, 0}, std::vector<Point3>{}), InvalidParameter);
}

// PPP nearest-neighbour distance has mean 1 / (2 sqrt(lambda)) = 500 m at 1/km^2.
TEST(Nearest, MeanNearestDockDistance) {
  const CityModel city = docks_only(1.0);
  std::vector<double> d;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto w = sample_world(city, s);
    Rng rng(derive_seed({s, 99}));
    d.push_back(nearest(sample_interior_point(city, rng), w.docks).distance);
  }
  const auto st = summarize(d);
  EXPECT_NEAR(st.mean, 500.0, 4.0 * st.std_error());
}

TEST(InteriorHotspot, StaysInsideMargin) {
  const CityModel city;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto w = sample_world(city, s);
    Rng rng(s);
    EXPECT_TRUE(in_interior(city, choose_interior_hotspot(w, city, rng).center));
  }
  CityModel empty = city;
  empty.hotspot_density = 0.0;
  Rng rng(1);
  const auto h = choose_interior_hotspot(sample_world(empty, 1), empty, rng);
  EXPECT_TRUE(in_interior(empty, h.center));
  EXPECT_GE(h.radius, empty.hotspot_radius_min);
}

TEST(LosProbability, NoBuildingsCrossed) {
  const CityModel city;  // one building per ~105 m of separation
  EXPECT_EQ(los_probability({0, 0, 30}, {100, 0, 80}, city), 1.0);
  EXPECT_EQ(los_probability({0, 0, 0}, {0, 0, 50}, city), 1.0);
}

TEST(LosProbability, HandEvaluatedProduct) {
  const CityModel city;
  // 500 m crosses floor(0.5 * sqrt(90)) = 4 buildings at heights 38.75, 56.25, 73.75, 91.25 m.
  EXPECT_NEAR(los_probability({0, 0, 30}, {500, 0, 100}, city), 0.8297678398399199, 1e-12);
  EXPECT_NEAR(los_probability({0, 0, 10}, {0, 1000, 60}, city), 0.012880112157918568, 1e-12);
}

TEST(LosProbability, VeryHighEndpointsClear) {
  const CityModel city;
  EXPECT_NEAR(los_probability({0, 0, 1e4}, {3000, 0, 1e4}, city), 1.0, 1e-12);
}

TEST(LosProbability, RejectsDegenerateInput) {
  const CityModel city;
  EXPECT_THROW(los_probability({1, 1, 1}, {1, 1, 1}, city), InvalidParameter);
  EXPECT_THROW(los_probability({std::nan(""), 0, 1}, {1, 1, 1}, city), InvalidParameter);
}

// Monotone in separation and in either endpoint height, over random parameter grids.
TEST(LosProbability, MonotonicityProperties) {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    CityModel city;
    city.building_cover_ratio = rng.uniform(0.05, 0.8);
    city.building_density = rng.uniform(50.0, 800.0);
    city.building_height_scale = rng.uniform(5.0, 50.0);
    const double z1 = rng.uniform(0.0, 80.0);
    const double z2 = rng.uniform(0.0, 300.0);

    double prev = 1.0;
    for (double r = 1.0; r <= 3000.0; r += 37.0) {
      const double p = los_probability({0, 0, z1}, {r, 0, z2}, city);
      ASSERT_LE(p, prev + 1e-15) << "r=" << r;
      ASSERT_GE(p, 0.0);
      prev = p;
    }
    const double r = rng.uniform(100.0, 2000.0);
    double last_tx = -1.0, last_rx = -1.0;
    for (double dz = 0.0; dz <= 200.0; dz += 10.0) {
      const double ptx = los_probability({0, 0, z1 + dz}, {r, 0, z2}, city);
      const double prx = los_probability({0, 0, z1}, {r, 0, z2 + dz}, city);
      ASSERT_GE(ptx, last_tx - 1e-15);
      ASSERT_GE(prx, last_rx - 1e-15);
      last_tx = ptx;
      last_rx = prx;
    }
  }
}

TEST(LosProbability, StrictlyIncreasingInReceiverHeightWhenBlocked) {
  const CityModel city;
  double prev = 0.0;
  for (double z = 10.0; z <= 60.0; z += 10.0) {
    const double p = los_probability({0, 0, 20}, {800, 0, z}, city);
    EXPECT_GT(p, prev);
    prev = p;
  }
}
