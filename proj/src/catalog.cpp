#include "uw/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "uw/derived.hpp"
#include "uw/errors.hpp"
#include "uw/io.hpp"

namespace uw {
namespace {

constexpr std::size_t kGevreyPartial = 10000;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

WeightSeq checked(WeightSeq seq) {
  const Verdict v = is_log_convex(seq, 64);
  if (!v.holds()) throw Error(ErrorKind::InvalidArgument, seq.name() + ": " + v.note);
  return seq;
}

WeightFn checked(WeightFn w) {
  const Verdict v = fn_invariants(w, log_spaced(0.5, 1e6, 24));
  if (!v.holds()) throw Error(ErrorKind::InvalidArgument, w.name() + ": " + v.note);
  return w;
}

double param(const std::map<std::string, std::string>& p, const std::string& key,
             std::optional<double> fallback = std::nullopt) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (fallback) return *fallback;
    throw Error(ErrorKind::InvalidArgument, "missing parameter '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "bad value for '" + key + "': " + it->second);
  }
}

}  // namespace

WeightSeq make_gevrey(double s) {
  if (!(s > 1.0))
    throw Error(ErrorKind::InvalidArgument, "Gevrey index must be > 1 (s = " + fmt(s) + ")");
  // suffix[k] = sum_{l=k}^{N} l^{-s}, summed from the small end
  auto suffix = std::make_shared<std::vector<double>>(kGevreyPartial + 2, 0.0);
  for (std::size_t l = kGevreyPartial; l >= 1; --l)
    (*suffix)[l] = (*suffix)[l + 1] + std::pow(static_cast<double>(l), -s);
  // sum_{l >= k} l^{-s} for convex decreasing terms: integral plus half the
  // first term, with the first Euler-Maclaurin correction as upper slack
  auto em = [s](double k) {
    const double base = std::pow(k, 1 - s) / (s - 1) + 0.5 * std::pow(k, -s);
    return Interval(base, base + s * std::pow(k, -s - 1) / 12);
  };
  SeqOptions o;
  o.weight_sequence = true;
  o.log_m_real = [s](double x) { return s * std::lgamma(x + 1); };
  o.tail_kind = "gevrey";
  o.tail = [suffix, em](std::size_t k) {
    if (k > kGevreyPartial) return em(static_cast<double>(k));
    const double N1 = static_cast<double>(kGevreyPartial + 1);
    return em(N1) + (*suffix)[k];
  };
  return checked(WeightSeq("gevrey(" + fmt(s) + ")",
                           [s](std::size_t k) { return s * std::lgamma(static_cast<double>(k) + 1); },
                           o));
}

WeightSeq make_factorial() {
  SeqOptions o;
  o.weight_sequence = true;
  o.log_m_real = [](double x) { return std::lgamma(x + 1); };
  o.tail_kind = "divergent";
  o.tail = [](std::size_t k) {
    // sum_{l=k}^{N} 1/l >= log((N+1)/k); the full series diverges
    const double N = static_cast<double>(kGevreyPartial);
    const double lo = static_cast<double>(k) <= N ? std::log((N + 1) / static_cast<double>(k)) : 0.0;
    return Interval(lo, kInf);
  };
  return checked(WeightSeq(
      "factorial", [](std::size_t k) { return std::lgamma(static_cast<double>(k) + 1); }, o));
}

WeightSeq make_qgevrey(double q) {
  if (!(q > 1.0)) throw Error(ErrorKind::InvalidArgument, "q-Gevrey base must be > 1");
  const double lq = std::log(q);
  SeqOptions o;
  o.weight_sequence = true;
  o.log_m_real = [lq](double x) { return x * x * lq; };
  o.tail_kind = "geometric";
  o.tail = [lq](std::size_t k) {
    const double v = std::exp(-(2 * static_cast<double>(k) - 1) * lq) / (1 - std::exp(-2 * lq));
    return Interval::point(v);
  };
  return checked(WeightSeq(
      "qgevrey(" + fmt(q) + ")",
      [lq](std::size_t k) { return static_cast<double>(k) * static_cast<double>(k) * lq; }, o));
}

WeightFn make_power_weight(double beta) {
  if (!(beta > 0 && beta < 1))
    throw Error(ErrorKind::InvalidArgument, "power exponent must lie in (0, 1)");
  FnOptions o;
  o.envelope = Envelope{beta, 0.0, 1.0};
  o.phi = [beta](double y) { return std::exp(beta * y); };
  o.conjugate = [beta](double x) {
    return x >= beta ? (x / beta) * (std::log(x / beta) - 1) : -1.0;
  };
  o.kappa_exact = [beta](double t) { return std::pow(t, beta) / (1 - beta); };
  o.poisson_exact = [beta](double r) {
    return std::pow(r, beta) / std::cos(std::numbers::pi * beta / 2);
  };
  return checked(WeightFn("power(" + fmt(beta) + ")",
                          [beta](double t) { return std::pow(t, beta); }, o));
}

WeightFn make_log_square_weight() {
  FnOptions o;
  o.normalized = true;
  // sup_t log^2 t / sqrt t = 16/e^2 at t = e^4
  o.envelope = Envelope{0.5, 0.0, 2.17};
  o.phi = [](double y) { return y > 0 ? y * y : 0.0; };
  o.conjugate = [](double x) { return x * x / 4; };
  o.kappa_exact = [](double t) {
    if (t < 1) return 2 * t;
    const double l = std::log(t);
    return l * l + 2 * l + 2;
  };
  return checked(WeightFn(
      "logsq",
      [](double t) {
        if (t <= 1) return 0.0;
        const double l = std::log(t);
        return l * l;
      },
      o));
}

WeightFn make_linear_weight() {
  FnOptions o;
  o.envelope = Envelope{1.0, 0.0, 1.0};
  o.phi = [](double y) { return std::exp(y); };
  o.conjugate = [](double x) { return x >= 1 ? x * std::log(x) - x : -1.0; };
  return checked(WeightFn("linear", [](double t) { return t; }, o));
}

std::vector<double> default_matrix_grid() { return dyadic_grid(-3, 3); }

std::vector<CatalogEntry> catalog_list() {
  return {
      {"sequence", "seq:gevrey?s=2", "s > 1", "M_k = (k!)^s, mu_k = k^s; tail by partial sums to 1e4 and integral bracket"},
      {"sequence", "seq:factorial", "", "M_k = k!; quasianalytic"},
      {"sequence", "seq:qgevrey?q=2", "q > 1", "M_k = q^(k^2), mu_k = q^(2k-1); geometric tail"},
      {"sequence", "derived:L(seq:gevrey?s=2)", "X in L, underlineL, S, K, Q, minorant", "derived sequence of any sequence URI"},
      {"sequence", "csv:<path>", "", "user table with columns k,log_m"},
      {"function", "fn:power?beta=0.5", "0 < beta < 1", "omega(t) = t^beta; envelope (beta, 0, 1); kappa = t^beta/(1-beta)"},
      {"function", "fn:logsq", "", "omega(t) = max(0, log t)^2; pre-weight; envelope (1/2, 0, 2.17)"},
      {"function", "fn:linear", "", "omega(t) = t; quasianalytic"},
      {"matrix", "mat:omega?fn=power&beta=0.5", "fn plus its parameters", "M^(a)_k = exp(phi*(a k)/a), grid 2^-3..2^3"},
      {"matrix", "mat:omega?fn=logsq", "", "matrix of the log-square pre-weight"},
      {"matrix", "mat:const?seq=gevrey&s=2", "seq plus its parameters", "single-member matrix"},
      {"matrix", "mat:const?seq=factorial", "", "single-member quasianalytic matrix"},
  };
}

ParsedUri parse_uri(const std::string& uri) {
  ParsedUri out;
  const auto colon = uri.find(':');
  if (colon == std::string::npos || colon == 0)
    throw Error(ErrorKind::InvalidArgument, "malformed entry '" + uri + "'");
  out.scheme = uri.substr(0, colon);
  std::string rest = uri.substr(colon + 1);
  if (out.scheme == "csv") {
    out.name = rest;
    return out;
  }
  if (out.scheme == "derived") {
    const auto open = rest.find('(');
    if (open == std::string::npos || rest.back() != ')')
      throw Error(ErrorKind::InvalidArgument, "malformed derived entry '" + uri + "'");
    out.name = rest.substr(0, open);
    out.inner = rest.substr(open + 1, rest.size() - open - 2);
    return out;
  }
  const auto q = rest.find('?');
  out.name = rest.substr(0, q);
  if (q != std::string::npos) {
    std::stringstream ss(rest.substr(q + 1));
    std::string kv;
    while (std::getline(ss, kv, '&')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorKind::InvalidArgument, "malformed parameter '" + kv + "'");
      out.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
  }
  return out;
}

namespace {

WeightSeq seq_from_params(const std::string& name, const std::map<std::string, std::string>& p) {
  if (name == "gevrey") return make_gevrey(param(p, "s", 2.0));
  if (name == "factorial") return make_factorial();
  if (name == "qgevrey") return make_qgevrey(param(p, "q", 2.0));
  throw Error(ErrorKind::InvalidArgument, "unknown sequence '" + name + "'");
}

WeightFn fn_from_params(const std::string& name, const std::map<std::string, std::string>& p) {
  if (name == "power") return make_power_weight(param(p, "beta", 0.5));
  if (name == "logsq") return make_log_square_weight();
  if (name == "linear") return make_linear_weight();
  throw Error(ErrorKind::InvalidArgument, "unknown function '" + name + "'");
}

}  // namespace

WeightSeq resolve_seq(const std::string& uri, std::size_t n) {
  const ParsedUri u = parse_uri(uri);
  if (u.scheme == "seq") return seq_from_params(u.name, u.params);
  if (u.scheme == "csv") {
    auto [seq, note] = normalize_sequence(read_sequence_csv(u.name));
    return note.empty() ? seq : seq.renamed(seq.name() + " (renormalized)");
  }
  if (u.scheme == "derived") {
    const WeightSeq base = resolve_seq(u.inner, n);
    if (u.name == "minorant") return log_convex_minorant(base, n);
    return derive(base, parse_construction(u.name), n);
  }
  throw Error(ErrorKind::InvalidArgument, "'" + uri + "' is not a sequence");
}

WeightFn resolve_fn(const std::string& uri) {
  const ParsedUri u = parse_uri(uri);
  if (u.scheme != "fn") throw Error(ErrorKind::InvalidArgument, "'" + uri + "' is not a function");
  return fn_from_params(u.name, u.params);
}

WeightMatrix resolve_matrix(const std::string& uri, std::vector<double> grid) {
  if (grid.empty()) grid = default_matrix_grid();
  const ParsedUri u = parse_uri(uri);
  if (u.scheme == "mat") {
    auto p = u.params;
    if (u.name == "omega") {
      auto it = p.find("fn");
      if (it == p.end()) throw Error(ErrorKind::InvalidArgument, "mat:omega needs fn=");
      const std::string fname = it->second;
      p.erase(it);
      return matrix_from_omega(fn_from_params(fname, p), grid);
    }
    if (u.name == "const") {
      auto it = p.find("seq");
      if (it == p.end()) throw Error(ErrorKind::InvalidArgument, "mat:const needs seq=");
      const std::string sname = it->second;
      p.erase(it);
      return WeightMatrix::constant(seq_from_params(sname, p));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown matrix '" + u.name + "'");
  }
  return WeightMatrix::constant(resolve_seq(uri));
}

}  // namespace uw
