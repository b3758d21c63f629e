#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace warpcheck {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default relative margin kept away from open or singular endpoints.
inline constexpr double kDefaultMargin = 1e-3;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool open_lo = false;
  bool open_hi = false;

  [[nodiscard]] bool valid() const { return lo < hi; }
  [[nodiscard]] bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  [[nodiscard]] double width() const { return hi - lo; }

  /// True for points of the (possibly open) interval.
  [[nodiscard]] bool contains(double t) const {
    const bool above = open_lo ? t > lo : t >= lo;
    const bool below = open_hi ? t < hi : t <= hi;
    return above && below;
  }

  /// Closed sub-interval kept `eps * width` away from each open end.
  /// Requires a finite interval.
  [[nodiscard]] Interval shrunk(double eps) const;

  /// Distance from t to the nearest finite endpoint (infinity if none).
  [[nodiscard]] double distance_to_boundary(double t) const;

  /// Distance to the nearest finite open endpoint. Open ends are where the
  /// formulas degenerate; closed ends are truncations and the formulas
  /// extend past them.
  [[nodiscard]] double distance_to_open_end(double t) const;

  /// Interval notation, e.g. "(0,1)" or "[-50,-1.001]".
  [[nodiscard]] std::string str() const;
};

/// `count` uniformly spaced points including both ends.
std::vector<double> linspace(double lo, double hi, int count);

/// `count` points strictly inside (lo, hi): cell midpoints of a uniform
/// partition.
std::vector<double> interior_points(double lo, double hi, int count);

}  // namespace warpcheck
