#include <cmath>

#include "doctest.h"
#include "uw/catalog.hpp"
#include "uw/derived.hpp"
#include "uw/relations.hpp"

using namespace uw;

namespace {

WeightSeq gevrey(double s) {
  SeqOptions o;
  o.weight_sequence = true;
  return WeightSeq("lgamma^" + std::to_string(s),
                   [s](std::size_t k) { return s * std::lgamma(k + 1.0); }, o);
}

WeightMatrix power_matrix(double beta) {
  return matrix_from_omega(make_power_weight(beta), default_matrix_grid());
}

}  // namespace

TEST_CASE("SV relation") {
  const auto g2 = make_gevrey(2);
  CHECK(prec_SV(seq_L(g2, 256), g2, 256).holds());
  CHECK(prec_SV(g2, g2, 256).holds());
  const auto v = prec_SV(gevrey(3), g2, 256);
  CHECK(v.fails());
  CHECK(!v.grid.empty());

  // SV implies the preorder
  for (double s : {1.5, 2.0, 3.0}) {
    const auto a = gevrey(s);
    const auto sv = prec_SV(a, g2, 256);
    CHECK(!implication("SV => preceq", sv, seq_preceq(a, g2, 256)).fails());
  }
}

TEST_CASE("SV is transitive on a catalog triple") {
  const auto a = gevrey(1.5), b = make_gevrey(2), c = make_gevrey(3);
  REQUIRE(prec_SV(a, b, 256).holds());
  REQUIRE(prec_SV(b, c, 256).holds());
  CHECK(prec_SV(a, c, 256).holds());
}

TEST_CASE("gamma1 relation") {
  const auto g2 = make_gevrey(2);
  CHECK(prec_gamma1(g2, g2, 256).holds());
  CHECK(prec_gamma1(seq_S(g2, 256), g2, 256).holds());
  const WeightSeq fast("j 2^j", [](std::size_t k) {
    const double x = static_cast<double>(k);
    return std::lgamma(x + 1) + std::log(2.0) * x * (x + 1) / 2;
  });
  CHECK(prec_gamma1(fast, g2, 128).fails());

  CHECK(gamma1_implies_SV_check(seq_S(g2, 256), g2, 256).holds());
  CHECK(gamma1_implies_SV_check(fast, g2, 128).holds());  // vacuous
  CHECK(!gamma1_implies_SV_check(seq_L(g2, 256), g2, 256).fails());
}

TEST_CASE("implication outcomes") {
  Verdict h, f, i;
  h.status = Status::Holds;
  f.status = Status::Fails;
  i.status = Status::Inconclusive;
  CHECK(implication("x", h, h).holds());
  CHECK(implication("x", f, f).holds());
  CHECK(implication("x", h, f).fails());
  CHECK(implication("x", i, h).status == Status::Inconclusive);
  CHECK(implication("x", h, i).status == Status::Inconclusive);
}

TEST_CASE("condition Mmg") {
  CHECK(cond_Mmg(make_gevrey(2), 256).holds());
  const WeightSeq geo("e^k", [](std::size_t k) { return 0.5 * double(k) * double(k + 1); });
  CHECK(cond_Mmg(geo, 128).fails());
  const auto q = cond_Mmg(make_factorial(), 128);
  CHECK(q.status == Status::Inconclusive);
  CHECK(!q.note.empty());
}

TEST_CASE("matrix inclusion") {
  const auto m5 = power_matrix(0.5);
  const auto self = matrix_braces_preceq(m5, m5, 128);
  CHECK(self.holds());
  for (const auto& p : self.pairing) CHECK(p.beta == p.alpha);

  const auto sf = derive_family(m5, Construction::S, 128);
  const auto kf = derive_family(m5, Construction::K, 128);
  CHECK(matrix_braces_preceq(sf, kf, 128).holds());

  // t^0.7 members grow like (k!)^{1/0.7}, t^0.3 members like (k!)^{1/0.3}
  const auto m7 = power_matrix(0.7), m3 = power_matrix(0.3);
  CHECK(matrix_braces_preceq(m7, m3, 256).holds());
  const auto rev = matrix_braces_preceq(m3, m7, 256);
  CHECK(rev.fails());
  for (const auto& p : rev.pairing) CHECK(!p.beta.has_value());
}

TEST_CASE("R-moderate growth") {
  for (double beta : {0.3, 0.5, 0.7}) CHECK(r_moderate_growth(power_matrix(beta), 128).holds());
  CHECK(r_moderate_growth(WeightMatrix::constant(make_gevrey(2)), 128).holds());
  CHECK(r_moderate_growth(derive_family(power_matrix(0.5), Construction::K, 128), 128).holds());
  CHECK(!r_moderate_growth(WeightMatrix::constant(make_qgevrey(2)), 64).holds());
}

TEST_CASE("matrix conditions") {
  for (double beta : {0.3, 0.5, 0.7}) CHECK(cond_liminf(power_matrix(beta), 128).holds());
  CHECK(cond_liminf2(WeightMatrix::constant(make_gevrey(2)), 256).holds());
  // j^2 <= A * 2j has no constant A
  CHECK(cond_invmg(WeightMatrix::constant(make_factorial()), 256).fails());
  CHECK(cond_invmg(WeightMatrix::constant(make_qgevrey(2)), 64).holds());

  const auto sf = derive_family(power_matrix(0.5), Construction::S, 128);
  const auto rs = cond_roquS(sf, 128);
  CHECK(rs.pairing.size() == sf.grid().size());
  CHECK(rs.grid == sf.grid());

  // liminf2 and invmg together give liminf and roquS
  const auto m = power_matrix(0.5);
  const auto a = cond_liminf2(m, 128), b = cond_invmg(m, 128);
  Verdict ante;
  ante.status = conjunction({a.status, b.status});
  Verdict cons;
  cons.status = conjunction({cond_liminf(m, 128).status, rs.status});
  CHECK(!implication("liminf2 and invmg", ante, cons).fails());
}

TEST_CASE("SV survives power shifts") {
  const auto mp = gevrey(1.5), m = make_gevrey(2);
  REQUIRE(prec_SV(mp, m, 256).holds());
  for (std::size_t n : {1u, 2u})
    CHECK(prec_SV(power_shift(mp, n), power_shift(m, 4 * n), 128).holds());
}

TEST_CASE("sequence space membership") {
  const auto g2 = make_gevrey(2);
  const std::size_t n = 128;
  std::vector<double> a(n + 1), b(n + 1), c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    a[k] = g2.log_m(k);
    b[k] = 3 * std::lgamma(k + 1.0);
    c[k] = double(k) * std::log(5.0) + g2.log_m(k);
  }
  const auto va = lambda_membership(a, g2, n);
  CHECK(va.holds());
  CHECK(va.witness == 1.0);
  CHECK(lambda_membership(b, g2, n).fails());
  const auto vc = lambda_membership(c, g2, n);
  CHECK(vc.holds());
  CHECK(vc.witness == 8.0);

  const auto mat = power_matrix(0.5);
  std::vector<double> d(n + 1);
  for (std::size_t k = 0; k <= n; ++k) d[k] = mat.member(4.0).log_m(k);
  CHECK(lambda_membership(d, mat, n).holds());
}
