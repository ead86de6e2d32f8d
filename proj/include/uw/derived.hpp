#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uw/func.hpp"
#include "uw/seq.hpp"

namespace uw {

enum class Construction { L, UnderlineL, S, K, Q };

const char* to_string(Construction c);
Construction parse_construction(const std::string& s);

/// A derived sequence with the diagnostics of its construction.
struct DerivedSeq {
  WeightSeq seq;
  // max_k |log X_k(T_hi) - log X_k(T_lo)| / k over the tail bracket
  double tail_spread = 0.0;
  std::vector<double> sigma;  // S only, index 0..n
  std::vector<double> tau;    // S only, index 0..n (tau_0 unused)
  double sigma_scale = 1.0;   // max(1, sup sigma_k / mu_k)
  double log_offset = 0.0;    // subtracted from every log value (Q only)
  std::string note;
};

/// Quadrature budgets for the K and Q tables. The associated function is
/// piecewise linear in log t, so tight tolerances only burn panels.
struct TabulationOptions {
  QuadratureOptions kappa{1e-9, 1e-10, 200};    // pointwise kappa probes
  QuadratureOptions segment{0.0, 1e-9, 16};     // cumulative kappa segments
  QuadratureOptions poisson{1e-8, 1e-9, 100};   // P on the Q grid
};

DerivedSeq derive_L(const WeightSeq& m, std::size_t n);
DerivedSeq derive_S(const WeightSeq& m, std::size_t n);
DerivedSeq derive_K(const WeightSeq& m, std::size_t n, const TabulationOptions& opts = {});
DerivedSeq derive_Q(const WeightSeq& m, std::size_t n, const TabulationOptions& opts = {});

WeightSeq seq_L(const WeightSeq& m, std::size_t n);
WeightSeq seq_underline_L(const WeightSeq& m, std::size_t n);
WeightSeq seq_S(const WeightSeq& m, std::size_t n);
WeightSeq seq_K(const WeightSeq& m, std::size_t n);
WeightSeq seq_Q(const WeightSeq& m, std::size_t n);

WeightSeq derive(const WeightSeq& m, Construction c, std::size_t n);

/// Memberwise lift over the grid of `mat`. The result is not checked for
/// monotonicity in the parameter.
WeightMatrix derive_family(const WeightMatrix& mat, Construction c, std::size_t n);

}  // namespace uw
