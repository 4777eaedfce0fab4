#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "core.hpp"

namespace uavsim {

/// Sample mean with a normal-approximation 95% interval.
struct StatSummary {
  double mean = 0.0;
  double std_dev = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::size_t n = 0;

  double half_width() const { return 0.5 * (ci95_high - ci95_low); }
  double std_error() const { return n > 0 ? std_dev / std::sqrt(static_cast<double>(n)) : 0.0; }
};

inline constexpr double kZ95 = 1.959963984540054;

inline StatSummary summarize(std::span<const double> samples) {
  if (samples.empty()) throw InvalidParameter("summarize: empty sample");
  StatSummary s;
  s.n = samples.size();
  const double shift = samples[0];
  double sum = 0.0;
  for (double x : samples) sum += x - shift;
  const double offset = sum / static_cast<double>(s.n);
  s.mean = shift + offset;
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - shift - offset) * (x - shift - offset);
    s.std_dev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  const double half = kZ95 * s.std_error();
  s.ci95_low = s.mean - half;
  s.ci95_high = s.mean + half;
  return s;
}

/// Summary of an empty sample: n = 0 and NaN everywhere else.
inline StatSummary empty_summary() {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan, nan, nan, 0};
}

/// True when `lower` is significantly below `upper`: the difference of means
/// exceeds the 95% bound on its standard error.
inline bool significantly_below(const StatSummary& lower, const StatSummary& upper) {
  const double se = std::hypot(lower.std_error(), upper.std_error());
  return upper.mean - lower.mean > kZ95 * se;
}

/// One-sample Kolmogorov-Smirnov statistic sup |F_n(x) - F(x)|.
template <typename Cdf>
double ks_statistic(std::span<const double> samples, Cdf&& cdf) {
  if (samples.empty()) throw InvalidParameter("ks_statistic: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace uavsim
