// Acceptance battery. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "uw/catalog.hpp"
#include "uw/derived.hpp"
#include "uw/errors.hpp"
#include "uw/harness.hpp"
#include "uw/relations.hpp"

using namespace uw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<WeightFn> power_weights() {
  return {make_power_weight(0.3), make_power_weight(0.5), make_power_weight(0.7)};
}

// 1: quadrature kappa against t^beta/(1-beta)
Outcome closed_form_kappa() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const auto& w : power_weights()) {
    const double beta = w.envelope()->theta;
    for (double t : log_spaced(1.0, 1e8, 50)) {
      const double exact = std::pow(t, beta) / (1 - beta);
      worst = std::max(worst, std::abs(kappa(w, t).value - exact) / exact);
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-6 && secs < 5.0,
          fmt("max rel err %.2e (tol 1e-6), %.2f s (limit 5 s)", worst, secs)};
}

// 2: P(ir) <= (4/pi) kappa(r) <= 4 P(ir)
Outcome poisson_sandwich() {
  auto ws = power_weights();
  ws.push_back(make_log_square_weight());
  double worst = -kInf;
  for (const auto& w : ws) {
    for (double r : log_spaced(1e-2, 1e8, 50)) {
      const double p = poisson_imag(w, r).value;
      const double k = 4 / std::numbers::pi * kappa(w, r).value;
      worst = std::max({worst, p - k, k - 4 * p});
    }
  }
  return {worst <= 1e-6, fmt("max violation %.2e (slack 1e-6), 4 weights x 50 r", worst)};
}

// 3: (phi*)* = phi at 30 points
Outcome biconjugate() {
  const std::vector<WeightFn> ws{make_power_weight(0.5), make_log_square_weight(),
                                 make_linear_weight()};
  const auto grid = log_spaced(1.0, 100.0, 30);
  double worst = 0;
  bool all = true;
  for (const auto& w : ws) {
    all = all && phi_star_involution_check(w, grid, 1e-4).holds();
    for (double y : grid) {
      const double ref = w.phi(y);
      worst = std::max(worst, std::abs(phi_star_star(w, y) - ref) / std::abs(ref));
    }
  }
  return {all && worst <= 1e-4, fmt("max rel err %.2e (tol 1e-4), 3 weights x 30 points", worst)};
}

// 4: M^(n) = (M^(1))^[n] on the numeric conjugate path
Outcome matrix_identity() {
  double worst = 0;
  for (const auto& w : power_weights()) {
    const auto mat = matrix_from_omega(w, {1.0, 2.0, 3.0}, false);
    const auto m1 = mat.member(1.0);
    for (std::size_t n : {2u, 3u}) {
      const auto mn = mat.member(static_cast<double>(n));
      const auto shifted = power_shift(m1, n);
      for (std::size_t k = 0; k <= 128; ++k)
        worst = std::max(worst, std::abs(mn.log_m(k) - shifted.log_m(k)));
    }
  }
  return {worst <= 1e-6, fmt("max log diff %.2e (tol 1e-6), n in {2,3}, k <= 128", worst)};
}

// 5: idempotence, fixed points, extremality against random convex minorants
Outcome minorant_laws() {
  const std::size_t n = 256;
  double worst = 0;
  bool convex = true;

  // fixed points: catalog weight sequences
  std::vector<WeightSeq> fixed{make_gevrey(2), make_gevrey(1.5), make_qgevrey(2)};
  for (const auto& w : power_weights()) fixed.push_back(matrix_from_omega(w, {1.0}).member(1.0));
  for (const auto& m : fixed) {
    const auto u = log_convex_minorant(m, n);
    for (std::size_t k = 0; k <= n; ++k) worst = std::max(worst, std::abs(u.log_m(k) - m.log_m(k)));
  }

  // idempotence and extremality on a perturbed non-convex sequence
  std::mt19937_64 rng(20240613);
  std::uniform_real_distribution<double> noise(0.0, 4.0);
  const std::size_t ext = n + n / 4;
  std::vector<double> raw(ext + 1, 0.0);
  for (std::size_t k = 1; k <= ext; ++k) raw[k] = 2 * std::lgamma(k + 1.0) + noise(rng);
  const auto m = WeightSeq::from_table("perturbed", raw, false);
  const auto u = log_convex_minorant(m, n);
  const auto uu = log_convex_minorant(u, n);
  convex = is_log_convex(u, n).holds();
  for (std::size_t k = 0; k <= n; ++k) {
    worst = std::max(worst, std::abs(uu.log_m(k) - u.log_m(k)));
    worst = std::max(worst, u.log_m(k) - m.log_m(k));
  }
  std::uniform_int_distribution<std::size_t> pick(0, ext);
  std::uniform_int_distribution<int> lines(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    // maximum of chords shifted below the data: convex and below m
    std::vector<double> lc(ext + 1, -kInf);
    const int count = lines(rng);
    for (int c = 0; c < count; ++c) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) j = (i + 1) % (ext + 1);
      const double slope = (raw[j] - raw[i]) / (double(j) - double(i));
      double shift = 0;
      for (std::size_t k = 0; k <= ext; ++k)
        shift = std::max(shift, raw[i] + slope * (double(k) - double(i)) - raw[k]);
      for (std::size_t k = 0; k <= ext; ++k)
        lc[k] = std::max(lc[k], raw[i] + slope * (double(k) - double(i)) - shift);
    }
    for (std::size_t k = 0; k <= n; ++k) worst = std::max(worst, lc[k] - u.log_m(k));
  }
  return {convex && worst <= 1e-9,
          fmt("max log violation %.2e (tol 1e-9), 20 random minorants, k <= 256", worst)};
}

// 6: L optimality at n = 512
struct Pairs {
  WeightSeq m;
  std::vector<std::pair<std::string, WeightSeq>> primes;  // M' with M' prec_SV M
};

Outcome l_optimality(std::vector<Pairs>& pairs) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 512;
  int sv_l = 0, antecedents = 0, violations = 0, total = 0;
  for (double s : {1.5, 2.0, 3.0}) {
    const auto m = make_gevrey(s);
    const auto l = seq_L(m, n);
    Pairs p{m, {}};
    sv_l += prec_SV(l, m, n).holds();
    p.primes.push_back({"L", l});
    const std::vector<std::pair<std::string, WeightSeq>> cands{
        {"S", seq_S(m, n)}, {"K", seq_K(m, n)}, {"underlineL", seq_underline_L(m, n)}};
    for (const auto& [name, mp] : cands) {
      ++total;
      const Verdict a = prec_SV(mp, m, n);
      if (!a.holds()) continue;
      ++antecedents;
      p.primes.push_back({name, mp});
      if (implication("optimality", a, seq_preceq(mp, l, n)).fails()) ++violations;
    }
    pairs.push_back(std::move(p));
  }
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "L prec_SV M on %d/3, SV antecedents %d/%d, violations %d, %.1f s (limit 30 s)", sv_l,
                antecedents, total, violations, secs);
  return {sv_l == 3 && violations == 0 && secs < 30.0, buf};
}

// 7: chain on the three power matrices
Outcome chain() {
  const auto t0 = std::chrono::steady_clock::now();
  HarnessConfig cfg;
  cfg.n = 256;
  int links = 0, holds = 0;
  std::string bad;
  for (const char* uri : {"mat:omega?fn=power&beta=0.3", "mat:omega?fn=power&beta=0.5",
                          "mat:omega?fn=power&beta=0.7"}) {
    try {
      const Report r = verify_chain(uri, cfg);
      for (const auto& l : r.links) {
        ++links;
        if (l.verdict.holds()) ++holds;
        else bad += std::string(" ") + uri + ":" + l.name;
      }
    } catch (const Error& e) {
      bad += std::string(" ") + uri + ": " + e.what();
    }
  }
  const double secs = seconds_since(t0);
  char buf[600];
  std::snprintf(buf, sizeof buf, "%d/%d links Hold, %.1f s (limit 120 s)%s", holds, links, secs,
                bad.c_str());
  return {links > 0 && holds == links && secs < 120.0, buf};
}

// 8: S, K, underline L, L pairwise equivalent for Gevrey-2
Outcome gevrey_equivalence() {
  const std::size_t n = 256;
  const auto m = make_gevrey(2);
  const std::vector<std::pair<const char*, WeightSeq>> seqs{
      {"S", seq_S(m, n)}, {"K", seq_K(m, n)}, {"underlineL", seq_underline_L(m, n)}, {"L", seq_L(m, n)}};
  int ok = 0, total = 0;
  std::string bad;
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = i + 1; j < seqs.size(); ++j) {
      ++total;
      if (seq_equivalent(seqs[i].second, seqs[j].second, n).holds()) ++ok;
      else bad += std::string(" ") + seqs[i].first + "~" + seqs[j].first;
    }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " pairs equivalent" + bad};
}

// 9: M' prec_SV M  =>  M'^[2] prec_SV M^[8]
Outcome shifted_sv(const std::vector<Pairs>& pairs) {
  int checked = 0, violations = 0, skipped = 0;
  for (const auto& p : pairs) {
    const auto m8 = power_shift(p.m, 8);
    for (const auto& [name, mp] : p.primes) {
      const Verdict a = prec_SV(mp, p.m, 512);
      const Verdict c = prec_SV(power_shift(mp, 2), m8, 256);
      const Verdict v = implication("shifted SV", a, c);
      ++checked;
      if (v.fails()) ++violations;
      if (v.status == Status::Inconclusive) ++skipped;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d pairs, violations %d, skipped %d", checked, violations, skipped);
  return {checked > 0 && violations == 0 && skipped == 0, buf};
}

// 10: liminf2 and invmg imply liminf and roquS over the catalog matrices
Outcome implication_suite() {
  const std::size_t n = 128;
  int violations = 0, skipped = 0, respected = 0;
  for (const auto& e : catalog_list()) {
    if (e.kind != "matrix") continue;
    try {
      const WeightMatrix mat = resolve_matrix(e.uri);
      const Verdict l2 = cond_liminf2(mat, n), im = cond_invmg(mat, n);
      const Verdict l1 = cond_liminf(mat, n);
      const Verdict rs = cond_roquS(derive_family(mat, Construction::S, n), n);
      Verdict ante, cons;
      ante.status = conjunction({l2.status, im.status});
      cons.status = conjunction({l1.status, rs.status});
      const Verdict v = implication(e.uri, ante, cons);
      if (v.fails()) ++violations;
      else if (v.holds()) ++respected;
      else ++skipped;
    } catch (const Error&) {
      ++skipped;  // quasianalytic members have no tail
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "violations %d, respected %d, skipped %d", violations, respected,
                skipped);
  return {violations == 0, buf};
}

// 11: associated functions
Outcome associated_function() {
  const auto f = make_factorial();
  double brute = 0;
  for (std::size_t k = 0; k <= 100; ++k)
    brute = std::max(brute, static_cast<double>(k) * std::log(10.0) - std::lgamma(k + 1.0));
  const double w10 = omega_from_seq(f)(10.0);
  const double ratio = omega_from_seq(make_gevrey(2))(1e6) / (2 * std::sqrt(1e6));
  const bool ok = std::abs(w10 - 7.92144) <= 1e-4 && std::abs(w10 - brute) <= 1e-4 &&
                  ratio >= 0.9 && ratio <= 1.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "omega_k!(10) = %.6f (scan %.6f, target 7.92144 +- 1e-4), Gevrey-2 ratio %.4f in [0.9, 1.0]",
                w10, brute, ratio);
  return {ok, buf};
}

}  // namespace

int main() {
  std::vector<Pairs> pairs;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form kappa", closed_form_kappa},
      {"Poisson sandwich", poisson_sandwich},
      {"Young biconjugate", biconjugate},
      {"matrix power-shift identity", matrix_identity},
      {"minorant laws", minorant_laws},
      {"L optimality", [&] { return l_optimality(pairs); }},
      {"chain on power matrices", chain},
      {"Gevrey-2 derived equivalence", gevrey_equivalence},
      {"SV under power shifts", [&] { return shifted_sv(pairs); }},
      {"condition implications", implication_suite},
      {"associated function values", associated_function},
  };
  int failed = 0, idx = 0;
  for (const auto& [name, run] : criteria) {
    ++idx;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %2d  %-30s %s\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
