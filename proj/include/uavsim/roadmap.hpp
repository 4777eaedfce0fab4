#pragma once

/// \file roadmap.hpp
/// Endurance under battery chemistries and density trends, at the fixed
/// 0.4 kg pack mass of the baseline platform.

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "csv.hpp"
#include "energetics.hpp"

namespace uavsim {

struct BatteryTech {
  std::string name;
  double energy_density = 0.0;  ///< Wh/kg
  std::string availability_note;

  void validate() const { detail::require_positive(energy_density, "technology energy density"); }
};

/// Compound annual growth capped at an optional ceiling.
struct TrendModel {
  double base_density = 250.0;
  int base_year = 2018;
  double annual_growth = 0.03;
  std::optional<double> plateau_density;

  void validate() const {
    detail::require_positive(base_density, "trend.base_density");
    detail::require_finite(annual_growth, "trend.annual_growth");
    detail::require(annual_growth >= 0.0 && annual_growth < 1.0, "trend.annual_growth must lie in [0, 1)");
    if (plateau_density) {
      detail::require_finite(*plateau_density, "trend.plateau_density");
      detail::require(*plateau_density >= base_density, "trend.plateau_density must be >= base density");
    }
  }
};

inline double projected_density(const TrendModel& trend, int year) {
  trend.validate();
  if (year < trend.base_year)
    throw InvalidParameter("projected_density: year " + std::to_string(year) + " precedes base year");
  const double grown = trend.base_density * std::pow(1.0 + trend.annual_growth, year - trend.base_year);
  return trend.plateau_density ? std::min(*trend.plateau_density, grown) : grown;
}

/// Li-ion ceiling: +25% over the 2018 baseline, reached in `ceiling_year`.
inline TrendModel li_ion_plateau_trend(double base_density = 250.0, int base_year = 2018,
                                       double ceiling_gain = 0.25, int ceiling_year = 2025) {
  detail::require(ceiling_year > base_year, "plateau year must follow base year");
  TrendModel t;
  t.base_density = base_density;
  t.base_year = base_year;
  t.annual_growth = std::pow(1.0 + ceiling_gain, 1.0 / (ceiling_year - base_year)) - 1.0;
  t.plateau_density = base_density * (1.0 + ceiling_gain);
  return t;
}

inline TrendModel three_percent_rule(double base_density = 250.0, int base_year = 2018) {
  return TrendModel{base_density, base_year, 0.03, std::nullopt};
}

/// Default comparison set, evaluated at `year` for the two trend lines.
inline std::vector<BatteryTech> default_technologies(int year = 2030) {
  return {
      {"li_ion_today", 250.0, "commercial today"},
      {"li_ion_plateau", projected_density(li_ion_plateau_trend(), year), "ceiling around 2025"},
      {"three_percent_rule", projected_density(three_percent_rule(), year),
       "historical 3%/yr trend, year " + std::to_string(year)},
      {"hydrogen_fuel_cell", 490.0, "safety concerns"},
      {"lithium_sulfur", 500.0, "safety concerns"},
      {"lithium_air", 1300.0, "sensitive to environment exposure"},
  };
}

/// CSV with header `name,density_wh_per_kg`.
inline std::vector<BatteryTech> read_technology_table(std::istream& in) {
  std::vector<BatteryTech> techs;
  for (const auto& row : csv::read_rows(in, 2, "technology table")) {
    BatteryTech t{row[0], csv::parse_double(row[1], "density_wh_per_kg"), ""};
    if (t.name.empty()) throw InvalidParameter("technology table: empty name");
    t.validate();
    techs.push_back(std::move(t));
  }
  if (techs.empty()) throw InvalidParameter("technology table is empty");
  return techs;
}

inline std::vector<BatteryTech> read_technology_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open technology table '" + path + "'");
  return read_technology_table(in);
}

inline UavPlatform with_technology(UavPlatform platform, const BatteryTech& tech) {
  tech.validate();
  platform.battery.energy_density = tech.energy_density;
  return platform;
}

/// Pure-hover endurance with the pack re-built from `tech`.
inline double tech_endurance(const BatteryTech& tech, const UavPlatform& platform) {
  return pure_hover_endurance(with_technology(platform, tech));
}

/// Hover time left after the travel legs of `plan`.
inline double tech_endurance(const BatteryTech& tech, const UavPlatform& platform, const MissionPlan& plan,
                             const EnduranceOptions& options = {}) {
  return mission_endurance(with_technology(platform, tech), plan, options).hover_time;
}

}  // namespace uavsim
