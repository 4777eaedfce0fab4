#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <uavsim/config.hpp>

using namespace uavsim;

namespace {

ExperimentConfig load_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  config::load(in, cfg);
  return cfg;
}

}  // namespace

TEST(Config, DefaultsMatchBaselinePlatform) {
  const ExperimentConfig cfg;
  EXPECT_EQ(cfg.platform.p_hover, 221.27);
  EXPECT_EQ(cfg.platform.battery.capacity_joules(), 360000.0);
  EXPECT_EQ(cfg.policy.swap_duration, 60.0);
  EXPECT_EQ(cfg.city.dock_density, 1.0);
  EXPECT_NO_THROW(cfg.validate_models());
}

TEST(Config, LoadsSectionsAndSweep) {
  const auto cfg = load_text(
      "[city]\ndock_density = 2\n"
      "[platform]\nv_horizontal = 12\n"
      "[laser]\nfleet_assignment = true\n"
      "[roadmap]\nyear = 2040\n"
      "[run]\nreplications = 50\nmaster_seed = 18446744073709551615\n"
      "[sweep]\nmission.hotspot_radius = 20, 40 ,60\n");
  EXPECT_EQ(cfg.city.dock_density, 2.0);
  EXPECT_EQ(cfg.platform.v_horizontal, 12.0);
  EXPECT_TRUE(cfg.laser.fleet_assignment);
  EXPECT_EQ(cfg.roadmap.year, 2040);
  EXPECT_EQ(cfg.replications, 50u);
  EXPECT_EQ(cfg.master_seed, 18446744073709551615ULL);
  ASSERT_EQ(cfg.sweep.size(), 1u);
  EXPECT_EQ(cfg.sweep[0].path, "mission.hotspot_radius");
  EXPECT_EQ(cfg.sweep[0].values, (std::vector<double>{20, 40, 60}));
}

TEST(Config, UnknownKeysAreErrors) {
  EXPECT_THROW(load_text("[city]\ndock_densty = 2\n"), ConfigError);
  EXPECT_THROW(load_text("[cty]\ndock_density = 2\n"), ConfigError);
  EXPECT_THROW(load_text("dock_density = 2\n"), ConfigError);
  EXPECT_THROW(load_text("[sweep]\ncity.nothing = 1,2\n"), ConfigError);
  EXPECT_THROW(load_text("[sweep]\nmission.height_table = 1,2\n"), ConfigError);
}

TEST(Config, MalformedValuesAreErrors) {
  EXPECT_THROW(load_text("[city]\ndock_density = lots\n"), ConfigError);
  EXPECT_THROW(load_text("[roadmap]\nyear = 2030.5\n"), ConfigError);
  EXPECT_THROW(load_text("[run]\nmaster_seed = -1\n"), ConfigError);
  EXPECT_THROW(load_text("[laser]\nfleet_assignment = maybe\n"), ConfigError);
  EXPECT_THROW(load_text("[sweep]\ncity.dock_density = 1,,2\n"), ConfigError);
  EXPECT_THROW(load_text("[city]\ndock_density = 1\ndock_density = 2\n"), ConfigError);
}

TEST(Config, SweepArgument) {
  const auto axis = config::parse_sweep_arg("platform.v_horizontal=4,8,12");
  EXPECT_EQ(axis.path, "platform.v_horizontal");
  EXPECT_EQ(axis.values.size(), 3u);
  EXPECT_THROW(config::parse_sweep_arg("platform.v_horizontal"), ConfigError);
  EXPECT_THROW(config::parse_sweep_arg("platform.v_horizontal=4,inf"), ConfigError);
  EXPECT_THROW(config::parse_sweep_arg("bogus.key=1"), ConfigError);
}

TEST(Config, ModelValidationCatchesBadValues) {
  auto cfg = load_text("[mission]\nbeamwidth_deg = 180\n");
  EXPECT_THROW(cfg.validate_models(), InvalidParameter);
  cfg = load_text("[battery]\nmass = 0\n");
  EXPECT_THROW(cfg.validate_models(), InvalidParameter);
}

// The manifest is a config file: loading it reproduces every key.
TEST(Config, ManifestRoundTrip) {
  auto cfg = load_text(
      "[city]\nbuilding_height_scale = 17.25\n[mission]\nheight_table = tables/h.csv\n"
      "[run]\nmaster_seed = 99\n[sweep]\nplatform.v_horizontal = 4, 6.5\n");
  cfg.platform.p_hover = 0.1 + 0.2;  // not exactly representable in short decimal
  std::ostringstream os;
  config::write(os, cfg);
  const auto again = load_text(os.str());
  for (const auto& key : config::registry()) EXPECT_EQ(key.get(cfg), key.get(again)) << key.path();
  ASSERT_EQ(again.sweep.size(), 1u);
  EXPECT_EQ(again.sweep[0].values, cfg.sweep[0].values);
  EXPECT_EQ(again.platform.p_hover, cfg.platform.p_hover);
}

TEST(Config, ShippedConfigsLoad) {
  for (const char* name : {"default.ini", "lifetime.ini", "response.ini", "backups.ini", "hotswap.ini",
                           "laser.ini", "roadmap.ini"}) {
    ExperimentConfig cfg;
    EXPECT_NO_THROW(config::load_file(std::string(UAVSIM_CONFIG_DIR) + "/" + name, cfg)) << name;
    EXPECT_NO_THROW(cfg.validate_models()) << name;
  }
}

TEST(Config, DefaultIniDocumentsEveryKey) {
  std::ifstream in(std::string(UAVSIM_CONFIG_DIR) + "/default.ini");
  std::stringstream text;
  text << in.rdbuf();
  for (const auto& key : config::registry())
    EXPECT_NE(text.str().find(key.key + " = "), std::string::npos) << key.path();
}
