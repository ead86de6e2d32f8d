#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "uw/catalog.hpp"
#include "uw/errors.hpp"
#include "uw/io.hpp"

using namespace uw;

namespace {

// sum_{l >= k} l^-s by direct summation to 2e6 plus the Euler-Maclaurin
// remainder, independent of the library's bracket
double zeta_tail(double s, std::size_t k) {
  const std::size_t cut = 2000000;
  long double acc = 0;
  for (std::size_t l = cut - 1; l >= k; --l) acc += std::pow(static_cast<long double>(l), -s);
  const double c = static_cast<double>(cut);
  return static_cast<double>(acc) + std::pow(c, 1 - s) / (s - 1) + 0.5 * std::pow(c, -s);
}

}  // namespace

TEST_CASE("Gevrey sequences") {
  const auto g = make_gevrey(2);
  CHECK(tail_recip_mu(g, 1).mid() == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-12));
  CHECK(is_non_quasianalytic(g).holds());
  CHECK_THROWS_AS(make_gevrey(1.0), Error);
  CHECK_THROWS_AS(make_gevrey(0.5), Error);

  for (double s : {1.5, 2.5, 3.0}) {
    const auto gs = make_gevrey(s);
    for (std::size_t k : {1u, 7u, 300u, 50000u}) {
      const Interval t = tail_recip_mu(gs, k);
      const double ref = zeta_tail(s, k);
      CHECK(t.lo <= ref * (1 + 1e-9));
      CHECK(t.hi >= ref * (1 - 1e-9));
      CHECK(t.mid() == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("q-Gevrey sequence") {
  const auto q = make_qgevrey(2);
  CHECK(q.log_m(5) == doctest::Approx(25 * std::log(2.0)));
  CHECK(mu(q, 3) == doctest::Approx(32.0));
  // geometric tail: sum_{l >= k} 2^{-(2l-1)} = 2^{1-2k} * 4/3
  CHECK(tail_recip_mu(q, 3).mid() == doctest::Approx(std::pow(2.0, -5) * 4 / 3).epsilon(1e-12));
  CHECK(is_log_convex(q, 64).holds());
}

TEST_CASE("catalog weight functions") {
  const auto w = make_power_weight(0.5);
  CHECK(w.options().kappa_exact(4.0) == doctest::Approx(4.0));
  CHECK(kappa(w, 4.0).value == doctest::Approx(4.0).epsilon(1e-9));
  CHECK_THROWS_AS(make_power_weight(1.0), Error);
  CHECK_THROWS_AS(make_power_weight(0.0), Error);

  const auto l = make_log_square_weight();
  for (double x : {0.5, 2.0, 7.0, 30.0}) CHECK(phi_star(l, x) == doctest::Approx(x * x / 4).epsilon(1e-9));
  for (double t : {3.0, 100.0, 1e6})
    CHECK(kappa(l, t).value == doctest::Approx(l.options().kappa_exact(t)).epsilon(1e-7));

  // closed-form kappa against quadrature on the acceptance grid
  for (double beta : {0.3, 0.5, 0.7}) {
    const auto p = make_power_weight(beta);
    for (double t : log_spaced(1.0, 1e8, 20))
      CHECK(kappa(p, t).value == doctest::Approx(std::pow(t, beta) / (1 - beta)).epsilon(1e-6));
  }
}

TEST_CASE("power-weight matrices have equivalent members") {
  for (double beta : {0.3, 0.5, 0.7}) {
    const auto mat = matrix_from_omega(make_power_weight(beta), default_matrix_grid());
    CHECK(matrix_monotone(mat, 128).holds());
    CHECK(seq_equivalent(mat.member(0.125), mat.member(8.0), 256).holds());
    CHECK(seq_equivalent(mat.member(1.0), mat.member(2.0), 256).holds());
  }
  // the log-square matrix lacks this: members e^{alpha k^2/4} are not equivalent
  const auto lq = matrix_from_omega(make_log_square_weight(), {1.0, 2.0});
  CHECK(seq_equivalent(lq.member(1.0), lq.member(2.0), 64).fails());
}

TEST_CASE("catalog listing and URIs") {
  const auto entries = catalog_list();
  CHECK(entries.size() >= 8);
  for (const auto& e : entries) {
    if (e.uri.find('<') != std::string::npos) continue;
    if (e.kind == "sequence") CHECK_NOTHROW(resolve_seq(e.uri, 16));
    if (e.kind == "function") CHECK_NOTHROW(resolve_fn(e.uri));
    if (e.kind == "matrix") CHECK_NOTHROW(resolve_matrix(e.uri));
  }

  const auto u = parse_uri("mat:omega?fn=power&beta=0.3");
  CHECK(u.scheme == "mat");
  CHECK(u.name == "omega");
  CHECK(u.params.at("fn") == "power");
  CHECK(u.params.at("beta") == "0.3");

  const auto d = parse_uri("derived:L(seq:gevrey?s=2)");
  CHECK(d.scheme == "derived");
  CHECK(d.name == "L");
  CHECK(d.inner == "seq:gevrey?s=2");

  CHECK(resolve_seq("seq:gevrey?s=3").log_m(4) == doctest::Approx(3 * std::log(24.0)));
  CHECK(resolve_fn("fn:power?beta=0.25")(16.0) == doctest::Approx(2.0));
  CHECK(resolve_matrix("mat:const?seq=gevrey&s=2").grid().size() == 1);
  CHECK_THROWS_AS(resolve_seq("seq:nope"), Error);
  CHECK_THROWS_AS(resolve_fn("fn:power?beta=2"), Error);
  CHECK_THROWS_AS(parse_uri("nonsense"), Error);
}

TEST_CASE("CSV round trip and renormalization") {
  const std::string path = "uw_test_seq.csv";
  {
    std::ofstream out(path);
    out << sequence_csv(make_gevrey(2), 32);
  }
  const auto back = resolve_seq("csv:" + path);
  for (std::size_t k = 0; k <= 32; ++k) CHECK(back.log_m(k) == doctest::Approx(make_gevrey(2).log_m(k)));
  CHECK(back.is_weight_sequence());

  // M_1 < M_0 gets a geometric factor
  {
    std::ofstream out(path);
    out << "k,log_m\n0,0\n1,-2\n2,-3\n3,-3.5\n4,-3\n";
  }
  const auto r = resolve_seq("csv:" + path);
  CHECK(r.log_m(0) == 0.0);
  CHECK(r.log_m(1) >= 0.0);
  CHECK(r.name().find("renormalized") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("sequence serialization") {
  const auto g = make_gevrey(2);
  const auto csv = sequence_csv(g, 3);
  CHECK(csv.rfind("k,log_m,mu\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  const auto j = sequence_json(g, 4);
  CHECK(j["n"] == 4);
  CHECK(j["log_m"].size() == 5);
  CHECK(j["tail_kind"].get<std::string>() != "");
  CHECK(j["log_m"][3].get<double>() == doctest::Approx(2 * std::log(6.0)));
}
