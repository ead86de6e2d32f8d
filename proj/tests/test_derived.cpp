#include <cmath>
#include <numbers>

#include <boost/math/special_functions/trigamma.hpp>

#include "doctest.h"
#include "uw/catalog.hpp"
#include "uw/derived.hpp"
#include "uw/relations.hpp"

using namespace uw;
using boost::math::trigamma;

namespace {

const WeightSeq& gevrey2() {
  static const WeightSeq g = make_gevrey(2);
  return g;
}

// (log X_k - log k!)/k at the ends of three dyadic windows must increase
// and end large: (X_k / k!)^{1/k} -> infinity.
void check_beats_factorial(const WeightSeq& x) {
  auto r = [&](std::size_t k) { return (x.log_m(k) - std::lgamma(k + 1.0)) / double(k); };
  CHECK(r(64) < r(128));
  CHECK(r(128) < r(256));
  CHECK(r(256) > std::log(20.0));
}

}  // namespace

TEST_CASE("L construction") {
  const auto d = derive_L(gevrey2(), 256);
  CHECK(d.seq.log_m(0) == 0.0);
  CHECK(std::exp(d.seq.log_m(1)) == doctest::Approx(6 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-9));
  // L_2 by hand: j in {0, 1}
  const double t2 = trigamma(2.0);
  const double l2 = std::min(2 * (std::log(2.0) - std::log(t2)), std::log(2.0) - std::log(t2));
  CHECK(d.seq.log_m(2) == doctest::Approx(l2).epsilon(1e-9));
  CHECK(d.tail_spread < 1e-6);
  check_beats_factorial(d.seq);
}

TEST_CASE("S construction") {
  const auto d = derive_S(gevrey2(), 256);
  CHECK(d.sigma[1] == doctest::Approx(1.0));
  CHECK(d.tau[1] == doctest::Approx(1 + trigamma(1.0)).epsilon(1e-10));
  CHECK(d.tau[1] == doctest::Approx(2.644934).epsilon(1e-6));
  for (std::size_t k : {2u, 10u, 100u})
    CHECK(d.tau[k] == doctest::Approx(1 / double(k) + trigamma(double(k))).epsilon(1e-9));
  CHECK(is_strongly_log_convex(d.seq, 256).holds());

  std::vector<double> ratio;
  for (std::size_t k = 1; k <= 256; ++k) ratio.push_back(std::log(d.sigma[k] / mu(gevrey2(), k)));
  CHECK(bounded_above_seq(1, ratio).status == Status::Holds);
  CHECK(d.sigma_scale >= 1.0);
}

TEST_CASE("S below underline L below L") {
  const auto s = seq_S(gevrey2(), 256);
  const auto l = seq_L(gevrey2(), 256);
  const auto ul = seq_underline_L(gevrey2(), 256);
  CHECK(seq_preceq(s, l, 256).holds());
  CHECK(seq_preceq(s, ul, 256).holds());
  for (std::size_t k = 0; k <= 256; ++k) CHECK(ul.log_m(k) <= l.log_m(k) + kLogTol);
  // the minorant of L equals the lower hull of the raw L table
  const auto hull = log_convex_minorant(seq_L(gevrey2(), 256 + 64), 256);
  for (std::size_t k = 0; k <= 256; ++k) CHECK(ul.log_m(k) == doctest::Approx(hull.log_m(k)));
}

TEST_CASE("L is optimal among SV-dominated sequences") {
  const auto l = seq_L(gevrey2(), 256);
  const auto mp = make_gevrey(1.5);
  REQUIRE(prec_SV(mp, gevrey2(), 256).holds());
  CHECK(seq_preceq(mp, l, 256).holds());
}

TEST_CASE("K construction") {
  const auto k = seq_K(gevrey2(), 256);
  CHECK(k.log_m(0) == 0.0);
  std::vector<double> r;
  for (std::size_t j = 1; j <= 128; ++j) r.push_back(k.log_m(j) - gevrey2().log_m(j));
  CHECK(bounded_above_seq(1, r).status == Status::Holds);
  check_beats_factorial(k);
}

TEST_CASE("Q construction") {
  const auto d = derive_Q(gevrey2(), 64);
  CHECK(d.seq.log_m(0) == 0.0);
  CHECK(is_log_convex(d.seq, 64).holds());

  const WeightFn w = omega_tilde_from_seq(gevrey2());
  QuadratureOptions qo{1e-9, 1e-10, 400};
  // sup dominates the probe r = 1
  const double p1 = poisson_imag(w, 1.0, qo).value;
  for (std::size_t k = 0; k <= 64; ++k)
    CHECK(d.seq.log_m(k) + d.log_offset >= -p1 / 2 - 1e-7);

  // kappa/(2 pi) <= P/2 <= (2/pi) kappa, so log Q_k lies between the two sups
  std::vector<double> y, kap;
  for (double v = -4; v <= 30; v += 1.0 / 16) {
    y.push_back(v);
    kap.push_back(kappa(w, std::exp(v), qo).value);
  }
  for (std::size_t k : {0u, 1u, 5u, 20u, 64u}) {
    double lo = -1e300, hi = -1e300;
    for (std::size_t i = 0; i < y.size(); ++i) {
      lo = std::max(lo, (k + 0.5) * y[i] - 2 / std::numbers::pi * kap[i]);
      hi = std::max(hi, (k + 0.5) * y[i] - kap[i] / (2 * std::numbers::pi));
    }
    const double q = d.seq.log_m(k) + d.log_offset;
    CHECK(q >= lo - 1e-6);
    CHECK(q <= hi + 1e-2);
  }
}

TEST_CASE("families over the square-root matrix") {
  const auto mat = matrix_from_omega(make_power_weight(0.5), default_matrix_grid());
  const std::size_t n = 128;
  for (double a : mat.grid()) {
    const auto s = derive_S(mat.member(a), n);
    CHECK(s.sigma[1] == doctest::Approx(1.0));
  }
  const auto lf = derive_family(mat, Construction::L, n);
  const auto ulf = derive_family(mat, Construction::UnderlineL, n);
  for (double a : {0.125, 1.0, 8.0})
    for (std::size_t k = 0; k <= n; ++k)
      CHECK(ulf.member(a).log_m(k) <= lf.member(a).log_m(k) + kLogTol);

  const auto kf = derive_family(mat, Construction::K, n);
  const auto qf = derive_family(mat, Construction::Q, n);
  CHECK(matrix_braces_preceq(kf, qf, n).holds());
  CHECK(matrix_braces_preceq(qf, kf, n).holds());

  // K members come from the kappa transforms of the associated functions;
  // those are pairwise equivalent. The log(1+t^2) summand dominates until
  // t ~ 1e6, so the grid has to reach far.
  QuadratureOptions qo{1e-9, 1e-10, 200};
  const auto grid = log_spaced(1e2, 1e12, 48);
  const auto w1 = kappa_weight(omega_tilde_from_seq(mat.member(0.5)), qo);
  const auto w2 = kappa_weight(omega_tilde_from_seq(mat.member(2.0)), qo);
  CHECK(fn_preceq(w1, w2, grid).holds());
  CHECK(fn_preceq(w2, w1, grid).holds());
}
