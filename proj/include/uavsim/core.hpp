#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavsim {

/// Base class for every error raised by the model layer.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates its documented support (negative density, zero mass, ...).
class InvalidParameter : public ModelError {
 public:
  using ModelError::ModelError;
};

/// The battery cannot cover the outbound and return legs of a mission.
class InsufficientBattery : public ModelError {
 public:
  explicit InsufficientBattery(double shortfall_joules)
      : ModelError("insufficient battery: short by " + std::to_string(shortfall_joules) + " J"),
        shortfall_(shortfall_joules) {}

  double shortfall_joules() const noexcept { return shortfall_; }

 private:
  double shortfall_;
};

/// Position in meters; z is height above ground.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

namespace detail {

inline void require(bool condition, const std::string& what) {
  if (!condition) throw InvalidParameter(what);
}

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be finite");
}

inline void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) throw InvalidParameter(std::string(name) + " must be > 0");
}

inline void require_non_negative(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0) throw InvalidParameter(std::string(name) + " must be >= 0");
}

inline void require_point(const Point3& p, const char* name) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    throw InvalidParameter(std::string(name) + " has non-finite coordinates");
  if (p.z < 0.0) throw InvalidParameter(std::string(name) + " lies below ground");
}

}  // namespace detail

inline double horizontal_distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double distance(const Point3& a, const Point3& b) {
  const double dz = a.z - b.z;
  const double h = horizontal_distance(a, b);
  return std::sqrt(h * h + dz * dz);
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace uavsim
