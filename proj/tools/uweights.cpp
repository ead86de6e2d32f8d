// uweights: command-line front end for the weight-sequence toolkit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "uw/catalog.hpp"
#include "uw/derived.hpp"
#include "uw/errors.hpp"
#include "uw/harness.hpp"
#include "uw/io.hpp"
#include "uw/relations.hpp"

namespace fs = std::filesystem;
using namespace uw;

namespace {

struct Options {
  HarnessConfig cfg;
  std::string plot_dir;
  // compute
  std::string entry, derive = "none", out, format = "csv";
  // check
  std::string relation, lhs, rhs;
  // verify-chain
  std::string report;
  bool catalog_json = false;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

void write_series(const Options& o, const std::string& stem,
                  const std::vector<std::pair<double, double>>& xy) {
  if (o.plot_dir.empty()) return;
  fs::create_directories(o.plot_dir);
  std::ostringstream os;
  os << "x,y\n";
  for (const auto& [x, y] : xy) os << format_number(x) << "," << format_number(y) << "\n";
  std::string name = stem;
  for (char& c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  write_output((fs::path(o.plot_dir) / (name + ".csv")).string(), os.str());
}

int cmd_catalog(const Options& o) {
  const auto entries = catalog_list();
  if (o.catalog_json) {
    json j = json::array();
    for (const auto& e : entries)
      j.push_back({{"kind", e.kind}, {"uri", e.uri}, {"parameters", e.parameters},
                   {"description", e.description}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& e : entries)
    std::cout << e.kind << "\t" << e.uri << "\t" << e.parameters << "\t" << e.description << "\n";
  return 0;
}

std::string seq_csv(const WeightSeq& seq, std::size_t n, const std::string& column) {
  std::string text = sequence_csv(seq, n);
  text.replace(text.find("log_m"), 5, column);
  return text;
}

int cmd_compute(const Options& o) {
  const std::size_t n = o.cfg.n;
  const ParsedUri u = parse_uri(o.entry);
  const bool json_out = o.format == "json";
  if (o.format != "csv" && !json_out)
    throw Error(ErrorKind::InvalidArgument, "format must be csv or json");

  auto emit_function = [&](const std::string& name, const std::string& column,
                           const std::function<double(double)>& f) {
    const auto ts = log_spaced(1.0, 1e8, std::max<std::size_t>(n, 2));
    std::vector<double> vals;
    std::vector<std::pair<double, double>> xy;
    for (double t : ts) {
      vals.push_back(f(t));
      xy.emplace_back(t, vals.back());
    }
    if (json_out) {
      write_output(o.out, json({{"name", name}, {"t", ts}, {column, vals}}).dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "t," << column << "\n";
      for (std::size_t i = 0; i < ts.size(); ++i)
        os << format_number(ts[i]) << "," << format_number(vals[i]) << "\n";
      write_output(o.out, os.str());
    }
    write_series(o, column, xy);
    return 0;
  };

  if (u.scheme == "fn") {
    const WeightFn w = resolve_fn(o.entry);
    if (o.derive == "none") return emit_function(w.name(), "omega", [&](double t) { return w(t); });
    if (o.derive == "kappa")
      return emit_function(w.name(), "kappa", [&](double t) { return kappa(w, t).value; });
    if (o.derive == "poisson")
      return emit_function(w.name(), "poisson", [&](double t) { return poisson_imag(w, t).value; });
    throw Error(ErrorKind::InvalidArgument, "derive '" + o.derive + "' does not apply to functions");
  }

  if (u.scheme == "mat") {
    WeightMatrix mat = resolve_matrix(o.entry, o.cfg.resolved_grid());
    if (o.derive != "none") mat = derive_family(mat, parse_construction(o.derive), n);
    if (json_out) {
      write_output(o.out, matrix_json(mat, n).dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "alpha,k,log_m\n";
      for (double a : mat.grid()) {
        const auto lm = mat.member(a).log_m_table(n);
        for (std::size_t k = 0; k <= n; ++k)
          os << format_number(a) << "," << k << "," << format_number(lm[k]) << "\n";
      }
      write_output(o.out, os.str());
    }
    return 0;
  }

  const WeightSeq base = resolve_seq(o.entry, n);
  if (o.derive == "omega_M") {
    const WeightFn w = omega_from_seq(base);
    return emit_function(w.name(), "omega", [&](double t) { return w(t); });
  }
  WeightSeq out = base;
  std::string column = "log_m";
  json provenance;
  if (o.derive == "minorant") {
    out = log_convex_minorant(base, n);
  } else if (o.derive != "none") {
    const Construction c = parse_construction(o.derive);
    column = std::string("log_") + to_string(c);
    if (c == Construction::L || c == Construction::S || c == Construction::K ||
        c == Construction::Q) {
      const DerivedSeq d = c == Construction::L   ? derive_L(base, n)
                           : c == Construction::S ? derive_S(base, n)
                           : c == Construction::K ? derive_K(base, n)
                                                  : derive_Q(base, n);
      out = d.seq;
      provenance = {{"source", base.name()}, {"construction", to_string(c)},
                    {"tail_spread", d.tail_spread}, {"note", d.note}};
    } else {
      out = derive(base, c, n);
      provenance = {{"source", base.name()}, {"construction", to_string(c)}};
    }
  }
  if (json_out) {
    json j = sequence_json(out, n);
    if (!provenance.is_null()) j["provenance"] = provenance;
    write_output(o.out, j.dump(2) + "\n");
  } else {
    write_output(o.out, seq_csv(out, n, column));
  }
  std::vector<std::pair<double, double>> xy;
  const auto lm = out.log_m_table(n);
  for (std::size_t k = 0; k <= n; ++k) xy.emplace_back(static_cast<double>(k), lm[k]);
  write_series(o, column, xy);
  return 0;
}

Verdict run_check(const Options& o) {
  const std::size_t n = o.cfg.n;
  const auto& tc = o.cfg.trend;
  const std::string& rel = o.relation;
  auto need_rhs = [&] {
    if (o.rhs.empty()) throw Error(ErrorKind::InvalidArgument, rel + " needs --rhs");
  };
  if (rel == "preceq" || rel == "equiv" || rel == "sv" || rel == "gamma1") {
    need_rhs();
    const WeightSeq a = resolve_seq(o.lhs, n), b = resolve_seq(o.rhs, n);
    if (rel == "preceq") return seq_preceq(a, b, n, tc);
    if (rel == "equiv") return seq_equivalent(a, b, n, tc);
    if (rel == "sv") return prec_SV(a, b, n, default_s_grid(), tc);
    return prec_gamma1(a, b, n, tc);
  }
  if (rel == "mg") return has_moderate_growth(resolve_seq(o.lhs, n), n, tc);
  if (rel == "mmg") return cond_Mmg(resolve_seq(o.lhs, n), n, tc);
  if (rel == "st") {
    need_rhs();
    return prec_st(resolve_fn(o.lhs), resolve_fn(o.rhs), default_t_grid(), tc);
  }
  const auto grid = o.cfg.resolved_grid();
  if (rel == "braces-preceq") {
    need_rhs();
    return matrix_braces_preceq(resolve_matrix(o.lhs, grid), resolve_matrix(o.rhs, grid), n, tc);
  }
  if (rel == "rmg") return r_moderate_growth(resolve_matrix(o.lhs, grid), n, tc);
  if (rel == "liminf") return cond_liminf(resolve_matrix(o.lhs, grid), n, tc);
  if (rel == "liminf2") return cond_liminf2(resolve_matrix(o.lhs, grid), n, tc);
  if (rel == "invmg") return cond_invmg(resolve_matrix(o.lhs, grid), n, tc);
  if (rel == "roquS")
    return cond_roquS(derive_family(resolve_matrix(o.lhs, grid), Construction::S, 2 * n), n, tc);
  if (rel == "membership") {
    need_rhs();
    const auto log_a = resolve_seq(o.lhs, n).log_m_table(n);
    if (parse_uri(o.rhs).scheme == "mat")
      return lambda_membership(log_a, resolve_matrix(o.rhs, grid), n, tc);
    return lambda_membership(log_a, resolve_seq(o.rhs, n), n, tc);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown relation '" + rel + "'");
}

int cmd_check(const Options& o) {
  const Verdict v = run_check(o);
  std::cout << to_json(v).dump(2) << "\n";
  write_series(o, v.relation, v.trajectory);
  return exit_code(v.status);
}

int emit_report(const Options& o, const Report& r) {
  const std::string text = r.to_json().dump(2) + "\n";
  if (o.report.empty()) std::cout << text;
  else write_output(o.report, text);
  for (std::size_t i = 0; i < r.links.size(); ++i)
    write_series(o, "link" + std::to_string(i) + "_" + r.links[i].name, r.links[i].verdict.trajectory);
  std::cerr << "summary: " << to_string(r.summary()) << "\n";
  return exit_code(r.summary());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight sequences, weight functions, and their derived weights"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  auto* config_opt =
      app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("--n", o.cfg.n, "number of terms / grid points")->capture_default_str();
  app.add_option("--grid", o.cfg.grid, "matrix parameter grid (default 2^-3..2^3)")->delimiter(',');
  app.add_option("--slack", o.cfg.trend.slack, "trend test slack")->capture_default_str();
  app.add_option("--fail-slope", o.cfg.trend.fail_slope, "growth slope certifying Fails")
      ->capture_default_str();
  app.add_option("--contraction", o.cfg.trend.contraction, "window increment contraction")
      ->capture_default_str();
  app.add_option("--threads", o.cfg.threads, "worker threads (0: hardware)");
  app.add_option("--plot-data", o.plot_dir, "directory for (x, y) series CSVs");

  auto* cat = app.add_subcommand("catalog", "list built-in entries");
  cat->add_flag("--json", o.catalog_json, "JSON output");
  cat->add_subcommand("list", "list built-in entries");

  auto* comp = app.add_subcommand("compute", "tabulate an entry or a derived weight");
  comp->add_option("entry", o.entry, "entry URI")->required();
  comp->add_option("--derive", o.derive,
                   "none, L, underlineL, S, K, Q, omega_M, kappa, poisson, minorant")
      ->capture_default_str();
  comp->add_option("--out", o.out, "output path (default stdout)");
  comp->add_option("--format", o.format, "csv or json")->capture_default_str();

  auto* chk = app.add_subcommand("check", "check a relation and print its verdict");
  chk->add_option("relation", o.relation,
                  "preceq, equiv, sv, gamma1, st, mg, mmg, braces-preceq, rmg, liminf, liminf2, "
                  "roquS, invmg, membership")
      ->required();
  chk->add_option("--lhs", o.lhs, "left entry URI")->required();
  chk->add_option("--rhs", o.rhs, "right entry URI");

  auto* chain = app.add_subcommand("verify-chain", "derive S, K, Q, L and check the chain");
  chain->add_option("entry", o.entry, "matrix or sequence URI")->required();
  chain->add_option("--report", o.report, "report path (default stdout)");

  auto* self = app.add_subcommand("selftest", "fast property battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (config_opt->count() > 0) o.cfg.source = config_opt->as<std::string>();

  try {
    if (cat->parsed()) return cmd_catalog(o);
    if (comp->parsed()) return cmd_compute(o);
    if (chk->parsed()) return cmd_check(o);
    if (chain->parsed()) return emit_report(o, verify_chain(o.entry, o.cfg));
    if (self->parsed()) return emit_report(o, selftest(o.cfg));
  } catch (const Error& e) {
    std::cerr << json({{"error", to_string(e.kind())}, {"message", e.what()}}).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json({{"error", "InternalError"}, {"message", e.what()}}).dump() << "\n";
    return 2;
  }
  return 2;
}
