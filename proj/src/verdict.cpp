#include "uw/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uw/errors.hpp"

namespace uw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivergentTail: return "DivergentTail";
    case ErrorKind::NotAWeightSequence: return "NotAWeightSequence";
    case ErrorKind::TruncationExhausted: return "TruncationExhausted";
    case ErrorKind::UnboundedConjugate: return "UnboundedConjugate";
    case ErrorKind::QuasianalyticInput: return "QuasianalyticInput";
    case ErrorKind::MaximizerUnbounded: return "MaximizerUnbounded";
    case ErrorKind::MissingEnvelope: return "MissingEnvelope";
  }
  return "Unknown";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

TrendResult bounded_above(std::span<const double> x, std::span<const double> values,
                          double window_ratio, const TrendConfig& cfg) {
  if (x.size() != values.size()) throw std::invalid_argument("bounded_above: size mismatch");
  TrendResult res;
  if (x.empty()) return res;

  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(values[i])) return res;
    if (values[i] > res.max_value) {
      res.max_value = values[i];
      res.argmax = x[i];
    }
  }
  if (std::isinf(res.max_value) && res.max_value > 0) {
    res.status = Status::Fails;
    return res;
  }

  const double q = window_ratio;
  const double xmax = x.back();
  const std::array<double, 4> bounds{xmax / (q * q * q), xmax / (q * q), xmax / q, xmax};
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  res.window_max = {kNegInf, kNegInf, kNegInf};
  std::array<int, 3> counts{};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int nreg = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int w = 0; w < 3; ++w) {
      // windows share their boundary points
      if (x[i] >= bounds[w] && x[i] <= bounds[w + 1]) {
        res.window_max[w] = std::max(res.window_max[w], values[i]);
        ++counts[w];
      }
    }
    if (x[i] >= bounds[1] && values[i] > kNegInf) {
      const double lx = std::log(x[i]);
      sx += lx;
      sy += values[i];
      sxx += lx * lx;
      sxy += lx * values[i];
      ++nreg;
    }
  }
  if (nreg >= 2) {
    const double den = nreg * sxx - sx * sx;
    if (den > 0) res.slope = (nreg * sxy - sx * sy) / den;
  }
  if (counts[0] == 0 || counts[1] == 0 || counts[2] == 0) return res;

  const auto [m1, m2, m3] = res.window_max;
  // All -inf windows mean the functional vanishes identically there.
  if (m3 == kNegInf) {
    res.status = Status::Holds;
    return res;
  }
  const double d1 = m2 - m1;
  const double d2 = m3 - m2;
  if (d2 <= cfg.slack || (d1 > 0 && std::isfinite(d1) && d2 <= cfg.contraction * d1)) {
    res.status = Status::Holds;
  } else if (res.slope > cfg.fail_slope && d1 > cfg.slack && d2 > cfg.slack) {
    res.status = Status::Fails;
  }
  return res;
}

TrendResult bounded_above_seq(std::size_t first, std::span<const double> values,
                              const TrendConfig& cfg) {
  std::vector<double> x(values.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(first + i);
  return bounded_above(x, values, 2.0, cfg);
}

TrendResult bounded_above_grid(std::span<const double> x, std::span<const double> values,
                               const TrendConfig& cfg) {
  if (x.size() < 2) return bounded_above(x, values, 2.0, cfg);
  const double q = std::pow(x.back() / x.front(), 0.25);
  return bounded_above(x, values, q, cfg);
}

std::vector<std::pair<double, double>> sample_trajectory(std::span<const double> x,
                                                          std::span<const double> values,
                                                          std::size_t max_points) {
  std::vector<std::pair<double, double>> out;
  const std::size_t n = x.size();
  if (n == 0) return out;
  if (n <= max_points) {
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(x[i], values[i]);
    return out;
  }
  std::size_t last = n;  // sentinel
  for (std::size_t p = 0; p < max_points; ++p) {
    const double frac = static_cast<double>(p) / static_cast<double>(max_points - 1);
    const auto i = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), frac))) - 1;
    const std::size_t idx = std::min(i, n - 1);
    if (idx == last) continue;
    out.emplace_back(x[idx], values[idx]);
    last = idx;
  }
  return out;
}

Verdict make_verdict(std::string relation, std::string lhs, std::string rhs,
                     const TrendResult& trend, std::span<const double> x,
                     std::span<const double> values) {
  Verdict v;
  v.relation = std::move(relation);
  v.lhs = std::move(lhs);
  v.rhs = std::move(rhs);
  v.status = trend.status;
  v.witness = trend.argmax;
  v.trajectory = sample_trajectory(x, values);
  return v;
}

Status conjunction(std::initializer_list<Status> parts) {
  bool inconclusive = false;
  for (Status s : parts) {
    if (s == Status::Fails) return Status::Fails;
    if (s == Status::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Status::Inconclusive : Status::Holds;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> dyadic_grid(int lo_exp, int hi_exp) {
  std::vector<double> g;
  for (int e = lo_exp; e <= hi_exp; ++e) g.push_back(std::ldexp(1.0, e));
  return g;
}

}  // namespace uw
