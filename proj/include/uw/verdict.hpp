#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace uw {

enum class Status { Holds, Fails, Inconclusive };

const char* to_string(Status s);

/// One (alpha, beta) match found while resolving a "for all alpha there is
/// beta" quantifier over a finite parameter grid.
struct Pairing {
  double alpha = 0.0;
  std::optional<double> beta;
  Status status = Status::Inconclusive;
};

/// Outcome of a numerical relation check.
///
/// `Fails` is only issued when the sampled data certifies growth of the
/// tested functional; anything the finite window cannot decide is
/// `Inconclusive`.
struct Verdict {
  std::string relation;
  std::string lhs;
  std::string rhs;
  Status status = Status::Inconclusive;
  double witness = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<double, double>> trajectory;
  std::vector<Pairing> pairing;
  std::vector<double> grid;
  std::string note;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::Fails; }
};

// Parameters of the sup-boundedness heuristic. All values are pinned here
// and embedded in every report.
struct TrendConfig {
  double slack = 1e-3;        // additive tolerance between window maxima
  double fail_slope = 0.05;   // regression slope on log x that certifies growth
  double contraction = 0.75;  // ratio of successive window increments
};

struct TrendResult {
  Status status = Status::Inconclusive;
  double max_value = -std::numeric_limits<double>::infinity();
  double argmax = std::numeric_limits<double>::quiet_NaN();
  double slope = 0.0;
  std::array<double, 3> window_max{};
};

/// Decides whether sup of `values` over the abscissae `x` (positive,
/// increasing) is finite. Windows are [x_max/q^3, x_max/q^2],
/// [x_max/q^2, x_max/q], [x_max/q, x_max]; q = 2 gives dyadic windows for
/// index sequences.
TrendResult bounded_above(std::span<const double> x, std::span<const double> values,
                          double window_ratio, const TrendConfig& cfg = {});

/// Index sequences: x_k = k for k = first..first+values.size()-1, dyadic windows.
TrendResult bounded_above_seq(std::size_t first, std::span<const double> values,
                              const TrendConfig& cfg = {});

/// Log-spaced grids: windows are quarters of the log range.
TrendResult bounded_above_grid(std::span<const double> x, std::span<const double> values,
                               const TrendConfig& cfg = {});

/// Subsamples at most `max_points` (x, v) pairs, log-spaced in position.
std::vector<std::pair<double, double>> sample_trajectory(std::span<const double> x,
                                                          std::span<const double> values,
                                                          std::size_t max_points = 48);

Verdict make_verdict(std::string relation, std::string lhs, std::string rhs,
                     const TrendResult& trend, std::span<const double> x,
                     std::span<const double> values);

/// Conjunction: any Fails -> Fails, else any Inconclusive -> Inconclusive.
Status conjunction(std::initializer_list<Status> parts);

std::vector<double> log_spaced(double lo, double hi, std::size_t count);
std::vector<double> dyadic_grid(int lo_exp, int hi_exp);

}  // namespace uw
