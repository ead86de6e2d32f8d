#include "uw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "uw/catalog.hpp"
#include "uw/derived.hpp"
#include "uw/errors.hpp"
#include "uw/relations.hpp"

namespace uw {

std::vector<double> HarnessConfig::resolved_grid() const {
  return grid.empty() ? default_matrix_grid() : grid;
}

unsigned HarnessConfig::resolved_threads() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

json to_json(const HarnessConfig& cfg) {
  json j = {{"n", cfg.n}, {"grid", cfg.resolved_grid()}, {"trend", to_json(cfg.trend)}};
  if (!cfg.source.empty()) j["config_file"] = cfg.source;
  return j;
}

Status Report::summary() const {
  Status s = Status::Holds;
  for (const auto& l : links) s = conjunction({s, l.verdict.status});
  return s;
}

json Report::to_json() const {
  json links_json = json::array();
  std::size_t holds = 0, fails = 0, inconclusive = 0;
  for (const auto& l : links) {
    links_json.push_back({{"name", l.name}, {"paper_ref", l.paper_ref}, {"verdict", uw::to_json(l.verdict)}});
    switch (l.verdict.status) {
      case Status::Holds: ++holds; break;
      case Status::Fails: ++fails; break;
      case Status::Inconclusive: ++inconclusive; break;
    }
  }
  return {{"config", uw::to_json(config)},
          {"links", links_json},
          {"summary",
           {{"status", to_string(summary())},
            {"holds", holds},
            {"fails", fails},
            {"inconclusive", inconclusive}}}};
}

int exit_code(Status s) {
  switch (s) {
    case Status::Holds: return 0;
    case Status::Fails: return 1;
    case Status::Inconclusive: return 3;
  }
  return 3;
}

namespace {

// Builds the members of every family on the grid, at most `threads` at a time.
void prebuild(const std::vector<WeightMatrix>& families, const std::vector<double>& grid,
              unsigned threads) {
  std::vector<std::pair<const WeightMatrix*, double>> jobs;
  for (const auto& f : families)
    for (double a : grid) jobs.emplace_back(&f, a);
  for (std::size_t start = 0; start < jobs.size(); start += threads) {
    std::vector<std::future<void>> batch;
    for (std::size_t i = start; i < std::min(jobs.size(), start + threads); ++i) {
      auto [f, a] = jobs[i];
      batch.push_back(std::async(std::launch::async, [f, a] { f->member(a); }));
    }
    for (auto& b : batch) b.get();  // rethrows
  }
}

WeightMatrix on_grid(const WeightMatrix& mat, const std::vector<double>& grid) {
  return WeightMatrix(mat.name(), [mat](double a) { return mat.member(a); }, grid);
}

}  // namespace

Report verify_chain(const WeightMatrix& base, const std::optional<WeightFn>& omega,
                    const HarnessConfig& cfg) {
  const std::size_t n = cfg.n;
  const auto grid = base.grid().size() == 1 ? base.grid() : cfg.resolved_grid();
  const WeightMatrix mat = on_grid(base, grid);

  // non-quasianalyticity of every member is a precondition of all derivations
  for (double a : grid) {
    const WeightSeq m = mat.member(a);
    if (!std::isfinite(tail_recip_mu(m, 1).hi))
      throw Error(ErrorKind::QuasianalyticInput, m.name() + ": sum of 1/mu has no finite bracket");
  }
  if (omega) {
    const auto& env = omega->envelope();
    if (!env || env->theta >= 1.0)
      throw Error(ErrorKind::QuasianalyticInput, omega->name() + ": no envelope with exponent < 1");
  }

  const WeightMatrix S = derive_family(mat, Construction::S, n);
  const WeightMatrix K = derive_family(mat, Construction::K, n);
  const WeightMatrix Q = derive_family(mat, Construction::Q, n);
  const WeightMatrix L = derive_family(mat, Construction::L, n);
  const WeightMatrix uL = derive_family(mat, Construction::UnderlineL, n);
  std::vector<WeightMatrix> families{S, K, Q, L, uL};
  std::optional<WeightMatrix> Mk;
  if (omega) {
    Mk = matrix_from_omega(kappa_weight(*omega), grid);
    families.push_back(*Mk);
  }
  prebuild(families, grid, cfg.resolved_threads());

  Report r;
  r.config = cfg;
  r.config.grid = grid;
  const auto& tc = cfg.trend;
  auto add = [&](std::string name, std::string ref, Verdict v) {
    r.links.push_back({std::move(name), std::move(ref), std::move(v)});
  };
  add("S {<=} K", "S-class contained in K-class", matrix_braces_preceq(S, K, n, tc));
  add("K {<=} Q", "K-class equals Q-class (one direction)", matrix_braces_preceq(K, Q, n, tc));
  add("Q {<=} K", "K-class equals Q-class (other direction)", matrix_braces_preceq(Q, K, n, tc));
  add("K {<=} underlineL", "K-class contained in underline-L-class",
      matrix_braces_preceq(K, uL, n, tc));
  add("underlineL {<=} L", "underline L below L memberwise", matrix_braces_preceq(uL, L, n, tc));
  {
    // L prec_SV M for every member
    Verdict v;
    v.relation = "memberwise prec_SV";
    v.lhs = L.name();
    v.rhs = mat.name();
    v.grid = grid;
    v.status = Status::Holds;
    for (double a : grid) {
      const Verdict m = prec_SV(L.member(a), mat.member(a), n, default_s_grid(), tc);
      v.pairing.push_back({a, a, m.status});
      v.status = conjunction({v.status, m.status});
      if (!m.holds() && std::isnan(v.witness)) v.witness = a;
    }
    add("L prec_SV M", "L is SV-dominated by M for every parameter", v);
  }
  if (omega) {
    add("M_kappa {<=} K", "kappa-class equals K-class (one direction)",
        matrix_braces_preceq(*Mk, K, n, tc));
    add("K {<=} M_kappa", "kappa-class equals K-class (other direction)",
        matrix_braces_preceq(K, *Mk, n, tc));
    add("underlineL {<=} K", "K and underline L are R-equivalent",
        matrix_braces_preceq(uL, K, n, tc));
  }
  return r;
}

Report verify_chain(const std::string& matrix_uri, const HarnessConfig& cfg) {
  const ParsedUri u = parse_uri(matrix_uri);
  std::optional<WeightFn> omega;
  if (u.scheme == "mat" && u.name == "omega") {
    auto p = u.params;
    std::string uri = "fn:" + p.at("fn");
    p.erase("fn");
    char sep = '?';
    for (const auto& [k, v] : p) {
      uri += sep + k + "=" + v;
      sep = '&';
    }
    omega = resolve_fn(uri);
  }
  return verify_chain(resolve_matrix(matrix_uri, cfg.resolved_grid()), omega, cfg);
}

Report selftest(const HarnessConfig& cfg) {
  Report r;
  r.config = cfg;
  auto add = [&](std::string name, std::string ref, Verdict v) {
    r.links.push_back({std::move(name), std::move(ref), std::move(v)});
  };
  auto verdict = [](std::string rel, bool ok, std::string note) {
    Verdict v;
    v.relation = std::move(rel);
    v.status = ok ? Status::Holds : Status::Fails;
    v.note = std::move(note);
    return v;
  };

  {
    const WeightFn w = make_power_weight(0.5);
    double worst = 0;
    for (double t : log_spaced(1, 1e8, 10))
      worst = std::max(worst, std::abs(kappa(w, t).value / (2 * std::sqrt(t)) - 1));
    add("kappa closed form", "kappa of t^beta is t^beta/(1-beta)",
        verdict("kappa_closed_form", worst <= 1e-6, "max rel err " + format_number(worst)));
  }
  {
    bool ok = true;
    for (const WeightFn& w : {make_power_weight(0.3), make_log_square_weight()}) {
      for (double rr : log_spaced(0.1, 1e6, 10)) {
        const double p = poisson_imag(w, rr).value, k = kappa(w, rr).value;
        ok = ok && p <= 4 / std::numbers::pi * k + 1e-6 && 4 / std::numbers::pi * k <= 4 * p + 1e-6;
      }
    }
    add("Poisson sandwich", "P(ir) <= (4/pi) kappa(r) <= 4 P(ir)",
        verdict("poisson_sandwich", ok, "power(0.3), logsq at 10 radii"));
  }
  add("biconjugate", "(phi*)* = phi",
      phi_star_involution_check(make_power_weight(0.5), log_spaced(1, 50, 5)));
  {
    const WeightSeq g = make_gevrey(2);
    const Interval t = g.tail(1);
    const double z2 = std::numbers::pi * std::numbers::pi / 6;
    add("Gevrey tail", "sum of 1/k^2",
        verdict("gevrey_tail", t.lo <= z2 + 1e-12 && z2 <= t.hi + 1e-12,
                "[" + format_number(t.lo) + ", " + format_number(t.hi) + "]"));
    const WeightSeq m = log_convex_minorant(g, 128);
    double dev = 0;
    for (std::size_t k = 0; k <= 128; ++k) dev = std::max(dev, std::abs(m.log_m(k) - g.log_m(k)));
    add("minorant of log-convex", "underline M = M",
        verdict("minorant_identity", dev <= 1e-9, "max deviation " + format_number(dev)));
    add("L prec_SV M", "L is SV-dominated by M", prec_SV(seq_L(g, 128), g, 128, default_s_grid(), cfg.trend));
    add("S ~ L", "S and L equivalent for Gevrey", seq_equivalent(seq_S(g, 128), seq_L(g, 128), 128, cfg.trend));
  }
  return r;
}

}  // namespace uw
