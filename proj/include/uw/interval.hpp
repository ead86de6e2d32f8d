#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed bracket [lo, hi] around an exactly defined quantity. Either end may
// be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }
  static Interval point(double v) { return {v, v}; }

  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double mid() const { return finite() ? 0.5 * (lo + hi) : kInf; }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }

  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator+(double v) const { return {lo + v, hi + v}; }
  Interval scaled(double c) const {  // c >= 0
    return {lo * c, hi * c};
  }
};

}  // namespace uw
