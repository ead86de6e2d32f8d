#pragma once

#include <cstddef>
#include <functional>

namespace uw {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;  // floor set by roundoff on large integrals
  std::size_t max_panels = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // Kronrod-Gauss difference summed over panels
  std::size_t panels = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]: the panel with the
/// largest error estimate is bisected until the total error is below
/// max(abs_tol, rel_tol*|I|) or the panel budget is spent.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace uw
