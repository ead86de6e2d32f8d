#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "uw/interval.hpp"
#include "uw/quadrature.hpp"
#include "uw/seq.hpp"
#include "uw/verdict.hpp"

namespace uw {

/// Certifies omega(u) <= a + b * u^theta for all u >= 0.
struct Envelope {
  double theta = 0.5;
  double a = 0.0;
  double b = 1.0;
};

struct FnOptions {
  std::optional<Envelope> envelope;
  bool normalized = false;  // omega vanishes on [0, 1]
  // y -> omega(e^y); defaults to omega(exp(y)). Supplying it avoids overflow
  // for associated functions at huge arguments.
  std::function<double(double)> phi;
  // Closed forms attached by the catalog. `conjugate` is the Young conjugate
  // of the raw (unnormalized) phi over y >= 0.
  std::function<double(double)> conjugate;
  std::function<double(double)> kappa_exact;
  std::function<double(double)> poisson_exact;
};

/// A (pre-)weight function omega: [0, inf) -> [0, inf).
class WeightFn {
 public:
  WeightFn() = default;
  WeightFn(std::string name, std::function<double(double)> omega, FnOptions opts = {});

  const std::string& name() const { return name_; }
  double operator()(double t) const;
  double phi(double y) const;  // omega(e^y)
  const std::optional<Envelope>& envelope() const { return opts_.envelope; }
  bool normalized() const { return opts_.normalized; }
  const FnOptions& options() const { return opts_; }

  WeightFn scaled(double c) const;  // c * omega

 private:
  std::string name_;
  std::function<double(double)> omega_;
  FnOptions opts_;
};

/// sup_{y >= 0} (x y - omega(e^y)) by bracketed maximization of a concave
/// objective. Throws UnboundedConjugate if no bracket exists below y = 700.
double phi_star(const WeightFn& w, double x);

/// Young conjugate of the normalized representative:
/// sup_{y >= 0} (x y - (phi(y) - phi(0))). Uses the attached closed form
/// when `allow_closed_form` and one exists.
double phi_star_normalized(const WeightFn& w, double x, bool allow_closed_form = true);

/// sup_{x >= 0} (t x - phi_star(x)).
double phi_star_star(const WeightFn& w, double t);

Verdict phi_star_involution_check(const WeightFn& w, const std::vector<double>& t_grid,
                                  double rel_tol = 1e-4);

/// omega_M(t) = sup_k (k log t - log M_k). Envelope synthesized from a trend
/// fit; absent when the fitted exponent exceeds 0.97 (quasianalytic-suspect).
WeightFn omega_from_seq(const WeightSeq& seq);

/// omega_M(t) + log(1 + t^2), the pre-weight function used for K and Q.
WeightFn omega_tilde_from_seq(const WeightSeq& seq);

/// phi_M(y) = omega_M(e^y) evaluated directly in the log variable.
double associated_phi(const WeightSeq& seq, double y);

/// Fits an envelope to the sampled y -> phi(y). Empty when quasianalytic-suspect.
std::optional<Envelope> synthesize_envelope(const std::function<double(double)>& phi);

struct TransformValue {
  double value = 0.0;       // midpoint of [quadrature, quadrature + tail bound]
  double error = 0.0;       // half tail bound plus quadrature error estimate
  bool converged = false;
};

/// kappa_omega(t) = int_0^inf omega(t e^u) e^{-u} du.
TransformValue kappa(const WeightFn& w, double t, const QuadratureOptions& opts = {});

/// P_omega(i r) = (2/pi) int_0^inf omega(r s)/(1 + s^2) ds.
TransformValue poisson_imag(const WeightFn& w, double r, const QuadratureOptions& opts = {});

/// kappa_omega as a weight function in its own right, envelope a + b t^theta/(1-theta).
WeightFn kappa_weight(const WeightFn& w, const QuadratureOptions& opts = {});

/// One-parameter family alpha -> M^(alpha) with members memoized.
class WeightMatrix {
 public:
  using MemberFn = std::function<WeightSeq(double)>;

  WeightMatrix() = default;
  WeightMatrix(std::string name, MemberFn member, std::vector<double> grid);
  static WeightMatrix constant(const WeightSeq& seq);

  const std::string& name() const { return state_->name; }
  const std::vector<double>& grid() const { return state_->grid; }
  WeightSeq member(double alpha) const;
  std::vector<std::string> warnings() const;
  void add_warning(std::string w) const;

 private:
  struct State {
    std::string name;
    MemberFn member;
    std::vector<double> grid;
    std::mutex mutex;
    std::map<double, WeightSeq> members;
    std::vector<std::string> warnings;
  };
  std::shared_ptr<State> state_;
};

/// log M^(alpha)_k = phi*(alpha k) / alpha for the normalized representative.
WeightMatrix matrix_from_omega(const WeightFn& w, std::vector<double> grid,
                               bool allow_closed_form = true);

/// Monotonicity of members in alpha, pointwise in log domain on [0, n].
Verdict matrix_monotone(const WeightMatrix& mat, std::size_t n);

Verdict fn_preceq(const WeightFn& sigma, const WeightFn& omega, const std::vector<double>& t_grid,
                  const TrendConfig& cfg = {});
Verdict prec_st(const WeightFn& sigma, const WeightFn& omega, const std::vector<double>& t_grid,
                const TrendConfig& cfg = {});

struct FnPredicates {
  Verdict doubling;
  Verdict om6;
  Verdict non_quasianalytic;
  Verdict little_o_t;
};
FnPredicates fn_predicates(const WeightFn& w, const std::vector<double>& t_grid,
                           const TrendConfig& cfg = {});

/// Sampled structural checks: omega(0) = 0, monotonicity, convexity of
/// phi, and the envelope inequality.
Verdict fn_invariants(const WeightFn& w, const std::vector<double>& t_grid);

std::vector<double> default_t_grid();  // 64 log-spaced points in [2, 1e8]

}  // namespace uw
