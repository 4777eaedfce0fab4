#pragma once

/// \file config.hpp
/// Experiment configuration: an INI file whose sections mirror the model
/// modules, plus a [sweep] section of `section.key = v1, v2, ...` axes.
/// Every key has a documented default; unknown sections or keys are errors.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "csv.hpp"
#include "energetics.hpp"
#include "lasercharge.hpp"
#include "roadmap.hpp"
#include "strategies.hpp"
#include "worldgen.hpp"

namespace uavsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { lifetime, response, backups, hotswap, laser, roadmap };

inline constexpr std::string_view kScenarioNames[] = {"lifetime", "response", "backups",
                                                      "hotswap",  "laser",    "roadmap"};

inline std::string_view to_string(Scenario s) { return kScenarioNames[static_cast<int>(s)]; }

inline Scenario parse_scenario(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kScenarioNames); ++i)
    if (kScenarioNames[i] == name) return static_cast<Scenario>(i);
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

struct MissionSettings {
  double hotspot_radius = 0.0;   ///< 0: use the sampled hotspot radius
  double beamwidth_deg = 90.0;
  double operate_height = 0.0;   ///< 0: derive from radius and beamwidth
  double reserve_fraction = 0.0;
  double altitude_cap = 120.0;
  std::string height_table;      ///< optional CSV (radius_m, beamwidth_deg, height_m)
};

struct LaserSettings {
  LaserTransmitter tx;
  PvReceiver rx;
  double uav_height = 100.0;
  double tx_height = 0.0;  ///< 0: transmitters keep their rooftop heights
  bool fleet_assignment = false;
};

struct RoadmapSettings {
  int year = 2030;
  int base_year = 2018;
  double base_density = 250.0;
  double annual_growth = 0.03;
  double plateau_gain = 0.25;
  int plateau_year = 2025;
  std::string tech_table;  ///< optional CSV (name, density_wh_per_kg)
  bool include_travel = true;
};

struct SweepAxis {
  std::string path;
  std::vector<double> values;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::lifetime;
  CityModel city;
  UavPlatform platform;
  MissionSettings mission;
  SwapPolicy policy;
  LaserSettings laser;
  RoadmapSettings roadmap;
  std::vector<SweepAxis> sweep;
  std::size_t replications = 0;  ///< 0: scenario default
  std::uint64_t master_seed = 1;
  unsigned threads = 0;          ///< 0: hardware concurrency; never affects results

  std::size_t effective_replications() const {
    if (replications > 0) return replications;
    return scenario == Scenario::laser ? 10000 : 2000;
  }

  /// Model parameters checked as a whole; sweep axes are checked separately.
  void validate_models() const {
    city.validate();
    platform.validate();
    policy.validate();
    detail::require_positive(mission.beamwidth_deg, "mission.beamwidth_deg");
    detail::require(mission.beamwidth_deg < 180.0, "mission.beamwidth_deg must be < 180");
    detail::require_non_negative(mission.hotspot_radius, "mission.hotspot_radius");
    detail::require_non_negative(mission.operate_height, "mission.operate_height");
    detail::require_finite(mission.reserve_fraction, "mission.reserve_fraction");
    detail::require(mission.reserve_fraction >= 0.0 && mission.reserve_fraction < 1.0,
                    "mission.reserve_fraction must lie in [0, 1)");
    detail::require_non_negative(mission.altitude_cap, "mission.altitude_cap");
    LaserTransmitter tx = laser.tx;
    tx.position = {};
    tx.validate();
    laser.rx.validate();
    detail::require_non_negative(laser.uav_height, "laser.uav_height");
    detail::require_non_negative(laser.tx_height, "laser.tx_height");
    detail::require(roadmap.year >= roadmap.base_year, "roadmap.year precedes roadmap.base_year");
    detail::require(roadmap.plateau_year > roadmap.base_year, "roadmap.plateau_year must follow base_year");
    detail::require_positive(roadmap.base_density, "roadmap.base_density");
    detail::require_non_negative(roadmap.plateau_gain, "roadmap.plateau_gain");
    TrendModel{roadmap.base_density, roadmap.base_year, roadmap.annual_growth, std::nullopt}.validate();
  }
};

namespace config {

enum class KeyKind { number, integer, text, flag };

/// One documented configuration key. `number` returns a reference into the
/// config so the key can be swept; text and integer keys go through strings.
struct KeySpec {
  std::string section;
  std::string key;
  KeyKind kind;
  std::string doc;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<void(ExperimentConfig&, double)> set_number;  ///< empty for text keys

  std::string path() const { return section + "." + key; }
};

namespace detail {

inline double parse_number(const std::string& text, const std::string& what) {
  try {
    return csv::parse_double(text, what);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
}

inline std::int64_t integral(double v, const std::string& what) {
  if (!std::isfinite(v) || std::floor(v) != v || std::fabs(v) > 9.0e15)
    throw ConfigError(what + ": expected an integer");
  return static_cast<std::int64_t>(v);
}

inline std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto t = csv::trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(what + ": expected an unsigned integer, got '" + std::string(t) + "'");
  return v;
}

inline bool parse_flag(const std::string& text, const std::string& what) {
  const auto t = csv::trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(what + ": expected true/false");
}

template <typename Ref>
KeySpec number(std::string section, std::string key, std::string doc, Ref ref) {
  const std::string what = section + "." + key;
  KeySpec k{section, key, KeyKind::number, std::move(doc), {}, {}, {}};
  k.get = [ref](const ExperimentConfig& c) {
    ExperimentConfig copy = c;
    return csv::format_double(ref(copy));
  };
  k.set_number = [ref](ExperimentConfig& c, double v) { ref(c) = v; };
  k.set = [ref, what](ExperimentConfig& c, const std::string& s) { ref(c) = parse_number(s, what); };
  return k;
}

template <typename Ref>
KeySpec integer(std::string section, std::string key, std::string doc, Ref ref) {
  const std::string what = section + "." + key;
  KeySpec k{section, key, KeyKind::integer, std::move(doc), {}, {}, {}};
  k.get = [ref](const ExperimentConfig& c) {
    ExperimentConfig copy = c;
    return std::to_string(ref(copy));
  };
  k.set_number = [ref, what](ExperimentConfig& c, double v) {
    using T = std::remove_reference_t<decltype(ref(c))>;
    const auto i = integral(v, what);
    if constexpr (std::is_unsigned_v<T>)
      if (i < 0) throw ConfigError(what + ": must be >= 0");
    ref(c) = static_cast<T>(i);
  };
  k.set = [ref, what](ExperimentConfig& c, const std::string& s) {
    using T = std::remove_reference_t<decltype(ref(c))>;
    if constexpr (std::is_unsigned_v<T>) {
      ref(c) = static_cast<T>(parse_u64(s, what));
    } else {
      ref(c) = static_cast<T>(integral(parse_number(s, what), what));
    }
  };
  return k;
}

template <typename Ref>
KeySpec text(std::string section, std::string key, std::string doc, Ref ref) {
  KeySpec k{section, key, KeyKind::text, std::move(doc), {}, {}, {}};
  k.get = [ref](const ExperimentConfig& c) {
    ExperimentConfig copy = c;
    return ref(copy);
  };
  k.set = [ref](ExperimentConfig& c, const std::string& s) { ref(c) = std::string(csv::trim(s)); };
  return k;
}

template <typename Ref>
KeySpec flag(std::string section, std::string key, std::string doc, Ref ref) {
  const std::string what = section + "." + key;
  KeySpec k{section, key, KeyKind::flag, std::move(doc), {}, {}, {}};
  k.get = [ref](const ExperimentConfig& c) {
    ExperimentConfig copy = c;
    return std::string(ref(copy) ? "true" : "false");
  };
  k.set = [ref, what](ExperimentConfig& c, const std::string& s) { ref(c) = parse_flag(s, what); };
  return k;
}

}  // namespace detail

/// Every recognised key, in manifest order.
inline const std::vector<KeySpec>& registry() {
  using C = ExperimentConfig;
  using detail::flag;
  using detail::integer;
  using detail::number;
  using detail::text;
  static const std::vector<KeySpec> keys = {
      number("city", "dock_density", "docking stations per km^2",
             [](C& c) -> double& { return c.city.dock_density; }),
      number("city", "hotspot_density", "demand hotspots per km^2",
             [](C& c) -> double& { return c.city.hotspot_density; }),
      number("city", "laser_density", "laser transmitters per km^2",
             [](C& c) -> double& { return c.city.laser_density; }),
      number("city", "rooftop_height_mean", "mean rooftop height of docks and transmitters (Rayleigh), m",
             [](C& c) -> double& { return c.city.rooftop_height_mean; }),
      number("city", "building_cover_ratio", "alpha: built-up land fraction, in (0, 1)",
             [](C& c) -> double& { return c.city.building_cover_ratio; }),
      number("city", "building_density", "beta: buildings per km^2",
             [](C& c) -> double& { return c.city.building_density; }),
      number("city", "building_height_scale", "gamma: Rayleigh scale of building heights, m",
             [](C& c) -> double& { return c.city.building_height_scale; }),
      number("city", "hotspot_radius_min", "smallest sampled hotspot radius, m",
             [](C& c) -> double& { return c.city.hotspot_radius_min; }),
      number("city", "hotspot_radius_max", "largest sampled hotspot radius, m",
             [](C& c) -> double& { return c.city.hotspot_radius_max; }),
      number("city", "region_side", "side of the square simulation window, m",
             [](C& c) -> double& { return c.city.region_side; }),
      number("city", "edge_margin", "served hotspots stay this far inside the window, m",
             [](C& c) -> double& { return c.city.edge_margin; }),

      number("platform", "v_horizontal", "cruise speed, m/s",
             [](C& c) -> double& { return c.platform.v_horizontal; }),
      number("platform", "v_ascent", "climb speed, m/s", [](C& c) -> double& { return c.platform.v_ascent; }),
      number("platform", "v_descent", "descent speed, m/s",
             [](C& c) -> double& { return c.platform.v_descent; }),
      number("platform", "p_horizontal", "cruise power, W",
             [](C& c) -> double& { return c.platform.p_horizontal; }),
      number("platform", "p_ascent", "climb power, W", [](C& c) -> double& { return c.platform.p_ascent; }),
      number("platform", "p_descent", "descent power, W",
             [](C& c) -> double& { return c.platform.p_descent; }),
      number("platform", "p_hover", "hover power, W", [](C& c) -> double& { return c.platform.p_hover; }),

      number("battery", "energy_density", "pack energy density, Wh/kg",
             [](C& c) -> double& { return c.platform.battery.energy_density; }),
      number("battery", "mass", "pack mass, kg", [](C& c) -> double& { return c.platform.battery.mass; }),

      number("mission", "hotspot_radius", "served hotspot radius, m; 0 uses the sampled radius",
             [](C& c) -> double& { return c.mission.hotspot_radius; }),
      number("mission", "beamwidth_deg", "full antenna beamwidth, degrees",
             [](C& c) -> double& { return c.mission.beamwidth_deg; }),
      number("mission", "operate_height", "fixed operating height, m; 0 derives it from radius and beamwidth",
             [](C& c) -> double& { return c.mission.operate_height; }),
      number("mission", "reserve_fraction", "capacity share kept unused, in [0, 1)",
             [](C& c) -> double& { return c.mission.reserve_fraction; }),
      number("mission", "altitude_cap", "operating heights above this are flagged (not clamped), m",
             [](C& c) -> double& { return c.mission.altitude_cap; }),
      text("mission", "height_table", "optional CSV radius_m,beamwidth_deg,height_m replacing the cone rule",
           [](C& c) -> std::string& { return c.mission.height_table; }),

      number("strategies", "recharge_power", "dock charger power for fleet cycling, W",
             [](C& c) -> double& { return c.policy.recharge_power; }),
      number("strategies", "swap_duration", "robotic battery swap time, s",
             [](C& c) -> double& { return c.policy.swap_duration; }),

      number("laser", "tx_power", "optical output per transmitter, W",
             [](C& c) -> double& { return c.laser.tx.tx_power; }),
      number("laser", "beam_waist_diameter", "beam diameter at the aperture, m",
             [](C& c) -> double& { return c.laser.tx.beam_waist_diameter; }),
      number("laser", "divergence", "full-angle beam divergence, rad",
             [](C& c) -> double& { return c.laser.tx.divergence; }),
      number("laser", "attenuation", "atmospheric extinction, 1/m",
             [](C& c) -> double& { return c.laser.tx.attenuation; }),
      number("laser", "panel_diameter", "PV panel diameter on the UAV, m",
             [](C& c) -> double& { return c.laser.rx.panel_diameter; }),
      number("laser", "conversion_efficiency", "PV optical-to-electrical efficiency, in (0, 1]",
             [](C& c) -> double& { return c.laser.rx.conversion_efficiency; }),
      number("laser", "uav_height", "hover height of the charged UAV, m",
             [](C& c) -> double& { return c.laser.uav_height; }),
      number("laser", "tx_height", "fixed transmitter height, m; 0 keeps rooftop heights",
             [](C& c) -> double& { return c.laser.tx_height; }),
      flag("laser", "fleet_assignment", "also match every served hotspot to one transmitter each",
           [](C& c) -> bool& { return c.laser.fleet_assignment; }),

      integer("roadmap", "year", "projection year for the trend-based technologies",
              [](C& c) -> int& { return c.roadmap.year; }),
      integer("roadmap", "base_year", "year of the baseline density",
              [](C& c) -> int& { return c.roadmap.base_year; }),
      number("roadmap", "base_density", "baseline Li-ion density, Wh/kg",
             [](C& c) -> double& { return c.roadmap.base_density; }),
      number("roadmap", "annual_growth", "yearly density growth of the trend line",
             [](C& c) -> double& { return c.roadmap.annual_growth; }),
      number("roadmap", "plateau_gain", "Li-ion ceiling as a gain over baseline",
             [](C& c) -> double& { return c.roadmap.plateau_gain; }),
      integer("roadmap", "plateau_year", "year the Li-ion ceiling is reached",
              [](C& c) -> int& { return c.roadmap.plateau_year; }),
      text("roadmap", "tech_table", "optional CSV name,density_wh_per_kg replacing the built-in table",
           [](C& c) -> std::string& { return c.roadmap.tech_table; }),
      flag("roadmap", "include_travel", "also report hover time after travel over random worlds",
           [](C& c) -> bool& { return c.roadmap.include_travel; }),

      integer("run", "replications", "replications per sweep point; 0 uses the scenario default",
              [](C& c) -> std::size_t& { return c.replications; }),
      integer("run", "master_seed", "seed every replication is derived from",
              [](C& c) -> std::uint64_t& { return c.master_seed; }),
      integer("run", "threads", "worker threads; 0 uses all cores (results do not depend on it)",
              [](C& c) -> unsigned& { return c.threads; }),
  };
  return keys;
}

inline const KeySpec* find_key(std::string_view path) {
  for (const auto& k : registry())
    if (k.path() == path) return &k;
  return nullptr;
}

inline const KeySpec& sweepable_key(std::string_view path) {
  const KeySpec* k = find_key(path);
  if (!k) throw ConfigError("unknown sweep parameter '" + std::string(path) + "'");
  if (!k->set_number) throw ConfigError("parameter '" + std::string(path) + "' cannot be swept");
  return *k;
}

inline std::vector<double> parse_value_list(const std::string& text, const std::string& path) {
  std::vector<double> values;
  for (const auto& field : csv::split(text)) {
    if (field.empty()) throw ConfigError("empty value in sweep list for '" + path + "'");
    const double v = detail::parse_number(field, path);
    if (!std::isfinite(v)) throw ConfigError("sweep value for '" + path + "' must be finite");
    values.push_back(v);
  }
  return values;
}

/// `section.key=v1,v2,...`
inline SweepAxis parse_sweep_arg(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) throw ConfigError("sweep must look like key=v1,v2,...: '" + arg + "'");
  SweepAxis axis{std::string(csv::trim(arg.substr(0, eq))), {}};
  sweepable_key(axis.path);
  axis.values = parse_value_list(arg.substr(eq + 1), axis.path);
  return axis;
}

inline void add_sweep(ExperimentConfig& cfg, SweepAxis axis) {
  auto it = std::find_if(cfg.sweep.begin(), cfg.sweep.end(),
                         [&](const SweepAxis& a) { return a.path == axis.path; });
  if (it != cfg.sweep.end())
    *it = std::move(axis);
  else
    cfg.sweep.push_back(std::move(axis));
}

inline void validate_sweep(const ExperimentConfig& cfg) {
  for (const auto& axis : cfg.sweep) {
    sweepable_key(axis.path);
    if (axis.values.empty()) throw ConfigError("sweep '" + axis.path + "' has no values");
    for (double v : axis.values)
      if (!std::isfinite(v)) throw ConfigError("sweep value for '" + axis.path + "' must be finite");
  }
}

/// Reads INI text over `cfg`. Keys not present keep their current values.
inline void load(std::istream& in, ExperimentConfig& cfg) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError("config key '" + section + "' must live inside a [section]");
    const bool known_section = section == "sweep" || std::any_of(registry().begin(), registry().end(),
                                                               [&](const KeySpec& k) { return k.section == section; });
    if (!known_section) throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [key, node] : body) {
      const std::string value = node.get_value<std::string>();
      if (section == "sweep") {
        sweepable_key(key);
        add_sweep(cfg, SweepAxis{key, parse_value_list(value, key)});
        continue;
      }
      const KeySpec* spec = find_key(section + "." + key);
      if (!spec) throw ConfigError("unknown config key '" + section + "." + key + "'");
      spec->set(cfg, value);
    }
  }
}

inline void load_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  load(in, cfg);
}

/// The fully-resolved configuration as INI, each key preceded by its doc line.
/// Loading the output reproduces `cfg`.
inline void write(std::ostream& out, const ExperimentConfig& cfg) {
  out << "# scenario: " << to_string(cfg.scenario) << "\n";
  std::string current;
  for (const auto& k : registry()) {
    if (k.section != current) {
      out << (current.empty() ? "" : "\n") << "[" << k.section << "]\n";
      current = k.section;
    }
    out << "# " << k.doc << "\n" << k.key << " = " << k.get(cfg) << "\n";
  }
  if (!cfg.sweep.empty()) {
    out << "\n[sweep]\n";
    for (const auto& axis : cfg.sweep) {
      out << axis.path << " = ";
      for (std::size_t i = 0; i < axis.values.size(); ++i)
        out << (i ? ", " : "") << csv::format_double(axis.values[i]);
      out << "\n";
    }
  }
}

}  // namespace config
}  // namespace uavsim
