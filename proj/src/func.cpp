#include "uw/func.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "uw/errors.hpp"

namespace uw {
namespace {

constexpr double kYMax = 700.0;
constexpr double kTailTarget = 1e-10;
constexpr std::size_t kIndexCap = std::size_t{1} << 52;

// Maximizes a concave f on [lo, hi]; returns {argmax, max}.
std::pair<double, double> maximize(const std::function<double(double)>& f, double lo, double hi) {
  constexpr int bits = std::numeric_limits<double>::digits / 2;
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::brent_find_minima([&](double y) { return -f(y); }, lo, hi, bits,
                                                 iters);
  double best_x = r.first, best = -r.second;
  for (double e : {lo, hi}) {
    const double v = f(e);
    if (v > best) {
      best = v;
      best_x = e;
    }
  }
  return {best_x, best};
}

double log1p_exp2(double y) {  // log(1 + e^{2y})
  return y > 0 ? 2 * y + std::log1p(std::exp(-2 * y)) : std::log1p(std::exp(2 * y));
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

WeightFn::WeightFn(std::string name, std::function<double(double)> omega, FnOptions opts)
    : name_(std::move(name)), omega_(std::move(omega)), opts_(std::move(opts)) {
  if (!opts_.phi) {
    auto om = omega_;
    opts_.phi = [om](double y) { return om(std::exp(y)); };
  }
}

double WeightFn::operator()(double t) const {
  if (t < 0) throw Error(ErrorKind::InvalidArgument, name_ + ": negative argument");
  return omega_(t);
}

double WeightFn::phi(double y) const { return opts_.phi(y); }

WeightFn WeightFn::scaled(double c) const {
  if (!(c > 0)) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
  FnOptions o;
  o.normalized = opts_.normalized;
  if (opts_.envelope) o.envelope = Envelope{opts_.envelope->theta, c * opts_.envelope->a,
                                            c * opts_.envelope->b};
  auto base = opts_;
  o.phi = [base, c](double y) { return c * base.phi(y); };
  if (base.conjugate) o.conjugate = [base, c](double x) { return c * base.conjugate(x / c); };
  if (base.kappa_exact) o.kappa_exact = [base, c](double t) { return c * base.kappa_exact(t); };
  if (base.poisson_exact)
    o.poisson_exact = [base, c](double r) { return c * base.poisson_exact(r); };
  auto om = omega_;
  return WeightFn(fmt(c) + "*" + name_, [om, c](double t) { return c * om(t); }, o);
}

double phi_star(const WeightFn& w, double x) {
  if (!(x >= 0)) throw Error(ErrorKind::InvalidArgument, "phi_star needs x >= 0");
  auto f = [&](double y) { return x * y - w.phi(y); };
  double lo = 0.0, hi = 8.0;
  for (;;) {
    const double h = 1e-6 * std::max(1.0, hi);
    if (f(hi) - f(hi - h) < 0) break;
    if (hi >= kYMax) {
      throw Error(ErrorKind::UnboundedConjugate,
                  w.name() + ": no maximizer below y = 700 at x = " + fmt(x));
    }
    lo = hi;
    hi = std::min(2 * hi, kYMax);
  }
  // the objective is still increasing at lo; maximizer lies in [lo, hi]
  if (lo > 0) lo = std::max(0.0, lo - 1e-6 * lo);
  return maximize(f, lo, hi).second;
}

double phi_star_normalized(const WeightFn& w, double x, bool allow_closed_form) {
  const double shift = w.phi(0.0);
  if (allow_closed_form && w.options().conjugate) return w.options().conjugate(x) + shift;
  return phi_star(w, x) + shift;
}

double phi_star_star(const WeightFn& w, double t) {
  auto g = [&](double x) { return t * x - phi_star(w, x); };
  double lo = 0.0, hi = 8.0;
  for (int i = 0; i < 1000; ++i) {
    const double h = 1e-6 * hi;
    if (g(hi) - g(hi - h) < 0) break;
    lo = hi;
    hi *= 2;
    if (!std::isfinite(hi)) throw Error(ErrorKind::UnboundedConjugate, "biconjugate unbounded");
  }
  return maximize(g, lo, hi).second;
}

Verdict phi_star_involution_check(const WeightFn& w, const std::vector<double>& t_grid,
                                  double rel_tol) {
  Verdict v;
  v.relation = "phi_star_involution";
  v.lhs = w.name();
  v.grid = t_grid;
  v.status = Status::Holds;
  double worst = 0.0;
  for (double t : t_grid) {
    const double exact = w.phi(t);
    const double back = phi_star_star(w, t);
    const double err = std::abs(back - exact) / std::max(std::abs(exact), 1e-12);
    v.trajectory.emplace_back(t, err);
    if (err > worst) {
      worst = err;
      v.witness = t;
    }
    if (err > rel_tol) v.status = Status::Fails;
  }
  v.note = "max relative deviation " + fmt(worst);
  return v;
}

double associated_phi(const WeightSeq& seq, double y) {
  if (std::isnan(y)) throw Error(ErrorKind::InvalidArgument, "associated function at NaN");
  const auto lim = seq.limit();
  if (!seq.is_weight_sequence()) {
    const std::size_t n = lim ? *lim : kDefaultTailTerms;
    double best = 0.0;  // k = 0 term
    std::size_t arg = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double v = static_cast<double>(k) * y - seq.log_m(k);
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    if (arg == n && n > 0) {
      throw Error(ErrorKind::TruncationExhausted,
                  seq.name() + ": associated function maximizer at truncation " + std::to_string(n));
    }
    return best;
  }

  // log-convex: maximizer is the number of quotients mu_j <= t
  auto ok = [&](std::size_t k) { return seq.log_mu(k) <= y; };
  if (lim && *lim == 0) return 0.0;
  if (!ok(1)) return std::max(0.0, y - seq.log_m(1));
  std::size_t lo = 1, hi = 2;
  for (;;) {
    if (lim && hi > *lim) {
      if (ok(*lim)) {
        throw Error(ErrorKind::TruncationExhausted,
                    seq.name() + ": associated function needs index beyond " +
                        std::to_string(*lim));
      }
      hi = *lim;
      break;
    }
    if (hi > kIndexCap) {
      if (!seq.has_real_extension()) {
        throw Error(ErrorKind::TruncationExhausted,
                    seq.name() + ": associated function needs index beyond 2^52");
      }
      // concave real extension; maximizer lies beyond lo
      auto g = [&](double x) { return x * y - seq.log_m_real(x); };
      double a = static_cast<double>(lo), b = 2 * a;
      while (g(b) - g(b * (1 - 1e-9)) >= 0) {
        a = b;
        b *= 2;
        if (!std::isfinite(b)) throw Error(ErrorKind::TruncationExhausted, "index overflow");
      }
      return maximize(g, a, b).second;
    }
    if (!ok(hi)) break;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  return static_cast<double>(lo) * y - seq.log_m(lo);
}

std::optional<Envelope> synthesize_envelope(const std::function<double(double)>& phi) {
  constexpr int kSamples = 301;
  constexpr double kYTop = 300.0;
  std::vector<double> ys(kSamples), vals(kSamples);
  try {
    for (int i = 0; i < kSamples; ++i) {
      ys[i] = kYTop * i / (kSamples - 1);
      vals[i] = phi(ys[i]);
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int i = 0; i < kSamples; ++i) {
    if (ys[i] < kYTop / 2 || !(vals[i] > 0)) continue;
    const double ly = std::log(vals[i]);
    sx += ys[i];
    sy += ly;
    sxx += ys[i] * ys[i];
    sxy += ys[i] * ly;
    ++cnt;
  }
  if (cnt < 2) return std::nullopt;
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  Envelope env;
  env.a = std::max(0.0, vals[0]);
  // a fitted exponent this close to one cannot be capped honestly
  env.theta = slope > 0.97 ? 1.0 : std::clamp(slope + 0.02, 0.02, 0.99);
  double ratio = 0.0;
  for (int i = 0; i < kSamples; ++i)
    ratio = std::max(ratio, (vals[i] - env.a) * std::exp(-env.theta * ys[i]));
  env.b = 1.1 * ratio;
  return env;
}

namespace {

constexpr std::size_t kAssocTable = std::size_t{1} << 16;
constexpr int kSparsePerOctave = 64;

// Snapshot of log M and log mu for fast evaluation of the associated
// function of a log-convex sequence. Dense up to 2^16, then log mu at
// geometrically spaced indices up to 2^52 with an interpolation search
// inside each bracket; beyond that associated_phi takes over.
struct AssocTable {
  WeightSeq seq;
  std::vector<double> lm;   // 0..K
  std::vector<double> lmu;  // lmu[k-1] = log mu_k, k = 1..K
  std::vector<std::size_t> sparse_k;
  std::vector<double> sparse_lmu;

  explicit AssocTable(const WeightSeq& s) : seq(s) {
    if (!s.is_weight_sequence()) return;
    std::size_t K = kAssocTable;
    if (s.limit()) K = std::min(K, *s.limit());
    lm = s.log_m_table(K);
    lmu.resize(K);
    for (std::size_t k = 1; k <= K; ++k) lmu[k - 1] = lm[k] - lm[k - 1];
    if (s.limit() && *s.limit() <= K) return;
    std::size_t top = kIndexCap;
    if (s.limit()) top = std::min(top, *s.limit());
    sparse_k.push_back(K);
    sparse_lmu.push_back(lmu.back());
    for (int j = 1;; ++j) {
      const auto k = static_cast<std::size_t>(
          std::ldexp(static_cast<double>(K), 0) * std::exp2(static_cast<double>(j) / kSparsePerOctave));
      if (k <= sparse_k.back()) continue;
      if (k > top) break;
      sparse_k.push_back(k);
      sparse_lmu.push_back(s.log_mu(k));
    }
  }

  double operator()(double y) const {
    if (lmu.empty()) return associated_phi(seq, y);
    if (y < lmu.back()) {
      const auto k = static_cast<std::size_t>(std::upper_bound(lmu.begin(), lmu.end(), y) - lmu.begin());
      return static_cast<double>(k) * y - lm[k];
    }
    if (sparse_k.size() < 2 || !(y < sparse_lmu.back())) return associated_phi(seq, y);
    // bracket: log mu_lo <= y < log mu_hi
    const auto j = static_cast<std::size_t>(
        std::upper_bound(sparse_lmu.begin(), sparse_lmu.end(), y) - sparse_lmu.begin());
    std::size_t lo = sparse_k[j - 1], hi = sparse_k[j];
    double f_lo = sparse_lmu[j - 1] - y, f_hi = sparse_lmu[j] - y;
    for (int it = 0; hi - lo > 1; ++it) {
      std::size_t mid;
      if (it % 3 == 2 || !(f_hi > f_lo)) {
        mid = lo + (hi - lo) / 2;
      } else {
        const double frac = -f_lo / (f_hi - f_lo);
        mid = lo + static_cast<std::size_t>(frac * static_cast<double>(hi - lo));
        mid = std::clamp(mid, lo + 1, hi - 1);
      }
      const double f = seq.log_mu(mid) - y;
      if (f <= 0) {
        lo = mid;
        f_lo = f;
      } else {
        hi = mid;
        f_hi = f;
      }
    }
    return static_cast<double>(lo) * y - seq.log_m(lo);
  }
};

}  // namespace

WeightFn omega_from_seq(const WeightSeq& seq) {
  FnOptions o;
  auto table = std::make_shared<const AssocTable>(seq);
  o.phi = [table](double y) { return (*table)(y); };
  o.normalized = seq.is_weight_sequence() && seq.log_m(1) >= 0;
  o.envelope = synthesize_envelope(o.phi);
  auto phi = o.phi;
  return WeightFn("omega[" + seq.name() + "]",
                  [phi](double t) { return t > 0 ? phi(std::log(t)) : 0.0; }, o);
}

WeightFn omega_tilde_from_seq(const WeightSeq& seq) {
  FnOptions o;
  auto table = std::make_shared<const AssocTable>(seq);
  o.phi = [table](double y) { return (*table)(y) + log1p_exp2(y); };
  o.envelope = synthesize_envelope(o.phi);
  auto phi = o.phi;
  return WeightFn("omega~[" + seq.name() + "]",
                  [phi](double t) { return t > 0 ? phi(std::log(t)) : 0.0; }, o);
}

namespace {

const Envelope& require_envelope(const WeightFn& w) {
  if (!w.envelope()) throw Error(ErrorKind::MissingEnvelope, w.name() + ": no growth envelope");
  if (w.envelope()->theta >= 1.0) {
    throw Error(ErrorKind::QuasianalyticInput,
                w.name() + ": envelope exponent >= 1 (quasianalytic-suspect)");
  }
  return *w.envelope();
}

// Cutoff U with tail(U) = c0 e^{-U} + c1 e^{-(1-theta)U} below the target,
// capped so that y0 + U stays below the overflow guard.
double tail_cutoff(double c0, double c1, double theta, double y0) {
  double u = 1.0;
  if (c0 > 0) u = std::max(u, std::log(2 * c0 / kTailTarget));
  if (c1 > 0) u = std::max(u, std::log(2 * c1 / kTailTarget) / (1 - theta));
  return std::max(1.0, std::min(u, kYMax - y0));
}

TransformValue kappa_at(const WeightFn& w, double y0, const QuadratureOptions& opts) {
  const Envelope& env = require_envelope(w);
  const double th = env.theta;
  const double c1 = env.b * std::exp(th * y0) / (1 - th);
  const double U = tail_cutoff(env.a, c1, th, y0);
  const double tail = env.a * std::exp(-U) + c1 * std::exp(-(1 - th) * U);
  const auto q = integrate([&](double u) { return w.phi(y0 + u) * std::exp(-u); }, 0.0, U, opts);
  return {q.value + 0.5 * tail, 0.5 * tail + q.error, q.converged};
}

}  // namespace

TransformValue kappa(const WeightFn& w, double t, const QuadratureOptions& opts) {
  if (!(t >= 0)) throw Error(ErrorKind::InvalidArgument, "kappa needs t >= 0");
  require_envelope(w);
  if (t == 0) return {0.0, 0.0, true};
  return kappa_at(w, std::log(t), opts);
}

TransformValue poisson_imag(const WeightFn& w, double r, const QuadratureOptions& opts) {
  if (!(r >= 0)) throw Error(ErrorKind::InvalidArgument, "poisson_imag needs r >= 0");
  const Envelope& env = require_envelope(w);
  if (r == 0) return {0.0, 0.0, true};
  const double y0 = std::log(r);
  const double th = env.theta;
  // in u = log s the integral is (1/pi) int phi(y0 + u) sech(u) du
  auto sech = [](double u) {
    const double e = std::exp(-std::abs(u));
    return 2 * e / (1 + e * e);
  };
  const double c1 = 2 * env.b * std::exp(th * y0) / (1 - th);
  const double U = tail_cutoff(2 * env.a, c1, th, y0);
  const double upper = 2 * env.a * std::exp(-U) + c1 * std::exp(-(1 - th) * U);
  // below -U1 the integrand is at most phi(y0) sech(u), phi increasing
  const double p0 = w.phi(y0);
  const double U1 = p0 > 0 ? std::max(1.0, std::log(4 * p0 / kTailTarget)) : 1.0;
  const double lower = 2 * p0 * std::exp(-U1);
  const auto q =
      integrate([&](double u) { return w.phi(y0 + u) * sech(u); }, -U1, U, opts);
  const double pi = std::numbers::pi;
  const double tails = (upper + lower) / pi;
  return {q.value / pi + 0.5 * tails, 0.5 * tails + q.error / pi, q.converged};
}

WeightFn kappa_weight(const WeightFn& w, const QuadratureOptions& opts) {
  const Envelope& env = require_envelope(w);
  FnOptions o;
  o.envelope = Envelope{env.theta, env.a, env.b / (1 - env.theta)};
  if (const auto& exact = w.options().kappa_exact)
    o.phi = [exact](double y) { return exact(std::exp(y)); };
  else
    o.phi = [w, opts](double y) { return kappa_at(w, y, opts).value; };
  auto phi = o.phi;
  return WeightFn("kappa[" + w.name() + "]",
                  [phi](double t) { return t > 0 ? phi(std::log(t)) : 0.0; }, o);
}

WeightMatrix::WeightMatrix(std::string name, MemberFn member, std::vector<double> grid)
    : state_(std::make_shared<State>()) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "weight matrix needs a grid");
  std::sort(grid.begin(), grid.end());
  state_->name = std::move(name);
  state_->member = std::move(member);
  state_->grid = std::move(grid);
}

WeightMatrix WeightMatrix::constant(const WeightSeq& seq) {
  return WeightMatrix(
      "{" + seq.name() + "}", [seq](double) { return seq; }, {1.0});
}

WeightSeq WeightMatrix::member(double alpha) const {
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->members.find(alpha);
    if (it != state_->members.end()) return it->second;
  }
  WeightSeq s = state_->member(alpha);
  std::lock_guard lock(state_->mutex);
  return state_->members.emplace(alpha, std::move(s)).first->second;
}

std::vector<std::string> WeightMatrix::warnings() const {
  std::lock_guard lock(state_->mutex);
  return state_->warnings;
}

void WeightMatrix::add_warning(std::string w) const {
  std::lock_guard lock(state_->mutex);
  state_->warnings.push_back(std::move(w));
}

WeightMatrix matrix_from_omega(const WeightFn& w, std::vector<double> grid,
                               bool allow_closed_form) {
  const bool shifted = !w.normalized() && w.phi(0.0) != 0.0;
  const std::string base = shifted ? w.name() + "^" : w.name();
  auto member = [w, base, allow_closed_form](double alpha) {
    if (!(alpha > 0)) throw Error(ErrorKind::InvalidArgument, "matrix parameter must be > 0");
    SeqOptions o;
    o.weight_sequence = true;
    o.log_m_real = [w, alpha, allow_closed_form](double x) {
      return phi_star_normalized(w, alpha * x, allow_closed_form) / alpha;
    };
    auto real = o.log_m_real;
    return WeightSeq("M^(" + fmt(alpha) + ")[" + base + "]",
                     [real](std::size_t k) { return k == 0 ? 0.0 : real(static_cast<double>(k)); },
                     o);
  };
  return WeightMatrix("M[" + base + "]", member, std::move(grid));
}

Verdict matrix_monotone(const WeightMatrix& mat, std::size_t n) {
  Verdict v;
  v.relation = "matrix_monotone";
  v.lhs = mat.name();
  v.grid = mat.grid();
  v.status = Status::Holds;
  const auto& g = mat.grid();
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const WeightSeq a = mat.member(g[i]), b = mat.member(g[i + 1]);
    for (std::size_t k = 0; k <= n; ++k) {
      if (a.log_m(k) > b.log_m(k) + kLogTol) {
        v.status = Status::Fails;
        v.witness = static_cast<double>(k);
        v.note = "alpha=" + fmt(g[i]) + " exceeds alpha=" + fmt(g[i + 1]);
        return v;
      }
    }
  }
  return v;
}

namespace {

Verdict grid_ratio_verdict(std::string relation, const std::string& lhs, const std::string& rhs,
                           const std::vector<double>& t_grid,
                           const std::function<std::optional<double>(double)>& value,
                           const TrendConfig& cfg) {
  std::vector<double> x, vals;
  for (double t : t_grid) {
    if (auto v = value(t)) {
      x.push_back(t);
      vals.push_back(*v);
    }
  }
  const TrendResult tr = bounded_above_grid(x, vals, cfg);
  Verdict v = make_verdict(std::move(relation), lhs, rhs, tr, x, vals);
  v.grid = t_grid;
  return v;
}

Status negate(Status s) {
  if (s == Status::Holds) return Status::Fails;
  if (s == Status::Fails) return Status::Holds;
  return s;
}

}  // namespace

Verdict fn_preceq(const WeightFn& sigma, const WeightFn& omega, const std::vector<double>& t_grid,
                  const TrendConfig& cfg) {
  return grid_ratio_verdict(
      "fn_preceq", sigma.name(), omega.name(), t_grid,
      [&](double t) -> std::optional<double> {
        const double s = sigma(t), o = omega(t);
        if (!(s > 0)) return std::nullopt;
        return o > 0 ? std::log(o) - std::log(s) : -kInf;
      },
      cfg);
}

Verdict prec_st(const WeightFn& sigma, const WeightFn& omega, const std::vector<double>& t_grid,
                const TrendConfig& cfg) {
  return grid_ratio_verdict(
      "prec_st", sigma.name(), omega.name(), t_grid,
      [&](double t) -> std::optional<double> {
        const double k = kappa(omega, t).value;
        return (k > 0 ? std::log(k) : -kInf) - std::log1p(sigma(t));
      },
      cfg);
}

FnPredicates fn_predicates(const WeightFn& w, const std::vector<double>& t_grid,
                           const TrendConfig& cfg) {
  FnPredicates out;
  out.doubling = grid_ratio_verdict(
      "doubling", w.name(), "", t_grid,
      [&](double t) -> std::optional<double> {
        const double a = w(t);
        if (!(a > 0)) return std::nullopt;
        return std::log(w(2 * t)) - std::log(a);
      },
      cfg);

  // 2 omega(t) <= omega(H t) + H for some dyadic H
  {
    Verdict v;
    v.relation = "om6";
    v.lhs = w.name();
    v.grid = t_grid;
    Status last = Status::Inconclusive;
    for (int e = 1; e <= 10; ++e) {
      const double H = std::ldexp(1.0, e);
      std::vector<double> vals;
      for (double t : t_grid) vals.push_back(2 * w(t) - w(H * t));
      const TrendResult tr = bounded_above_grid(t_grid, vals, cfg);
      last = tr.status;
      if (tr.status == Status::Holds && tr.max_value <= H) {
        v.status = Status::Holds;
        v.witness = H;
        v.trajectory = sample_trajectory(t_grid, vals);
        break;
      }
      if (e == 10) {
        v.status = last == Status::Fails ? Status::Fails : Status::Inconclusive;
        v.witness = H;
        v.trajectory = sample_trajectory(t_grid, vals);
        std::ostringstream os;
        os << "no H <= 1024 found; at H=1024 sup(2w(t)-w(Ht)) = " << tr.max_value;
        v.note = os.str();
      }
    }
    out.om6 = v;
  }

  {
    Verdict v;
    v.relation = "non_quasianalytic";
    v.lhs = w.name();
    const auto& env = w.envelope();
    if (env && env->theta < 1.0) {
      v.status = Status::Holds;
      v.note = "envelope exponent " + fmt(env->theta) + " < 1";
    } else {
      // omega >= c t certifies divergence of the integral
      Verdict lin = grid_ratio_verdict(
          "non_quasianalytic", w.name(), "", t_grid,
          [&](double t) -> std::optional<double> {
            const double a = w(t);
            return a > 0 ? std::log(t) - std::log(a) : kInf;
          },
          cfg);
      v = lin;
      v.status = lin.status == Status::Holds ? Status::Fails : Status::Inconclusive;
      v.note = env ? "envelope exponent >= 1" : "no envelope";
    }
    out.non_quasianalytic = v;
  }

  {
    Verdict v = grid_ratio_verdict(
        "little_o_t", w.name(), "", t_grid,
        [&](double t) -> std::optional<double> {
          const double a = w(t);
          return a > 0 ? std::log(t) - std::log(a) : kInf;
        },
        cfg);
    v.status = negate(v.status);
    out.little_o_t = v;
  }
  return out;
}

Verdict fn_invariants(const WeightFn& w, const std::vector<double>& t_grid) {
  Verdict v;
  v.relation = "fn_invariants";
  v.lhs = w.name();
  v.grid = t_grid;
  v.status = Status::Holds;
  auto fail = [&](double t, std::string why) {
    if (v.status == Status::Fails) return;
    v.status = Status::Fails;
    v.witness = t;
    v.note = std::move(why);
  };
  if (w(0.0) != 0.0) fail(0.0, "omega(0) != 0");
  double prev = 0.0;
  for (double t : t_grid) {
    const double o = w(t);
    if (o < prev - 1e-12 * std::max(1.0, std::abs(prev))) fail(t, "omega decreases");
    prev = o;
    if (const auto& env = w.envelope(); env && env->theta < 1.0) {
      const double bound = env->a + env->b * std::pow(t, env->theta);
      if (o > bound * (1 + 1e-9) + 1e-12) fail(t, "envelope violated");
    }
  }
  for (std::size_t i = 1; i + 1 < t_grid.size(); ++i) {
    // second difference of phi on the (possibly uneven) log grid
    const double y0 = std::log(t_grid[i - 1]), y1 = std::log(t_grid[i]), y2 = std::log(t_grid[i + 1]);
    const double p0 = w.phi(y0), p1 = w.phi(y1), p2 = w.phi(y2);
    const double s1 = (p1 - p0) / (y1 - y0), s2 = (p2 - p1) / (y2 - y1);
    if (s2 < s1 - 1e-9 * std::max(1.0, std::abs(s1))) fail(t_grid[i], "phi not convex");
  }
  return v;
}

std::vector<double> default_t_grid() { return log_spaced(2.0, 1e8, 64); }

}  // namespace uw
