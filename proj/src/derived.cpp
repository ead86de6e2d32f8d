#include "uw/derived.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "uw/errors.hpp"

namespace uw {
namespace {

void require_non_quasianalytic(const WeightSeq& m) {
  if (!m.is_weight_sequence())
    throw Error(ErrorKind::NotAWeightSequence, m.name() + " is not a weight sequence");
  tail_recip_mu(m, 1, kDefaultTailTerms, true);
}

bool table_log_convex(const std::vector<double>& lm) {
  for (std::size_t k = 1; k + 1 < lm.size(); ++k)
    if (lm[k + 1] - lm[k] < lm[k] - lm[k - 1] - kLogTol) return false;
  return true;
}

WeightSeq finish(std::string name, std::vector<double> lm) {
  const bool convex = table_log_convex(lm);
  return WeightSeq::from_table(std::move(name), std::move(lm), convex);
}

std::vector<double> l_table(const std::vector<double>& lm, const std::vector<double>& log_t,
                            std::size_t n) {
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double c = std::log(static_cast<double>(k)) - log_t[k];
    double best = kInf;
    for (std::size_t j = 0; j < k; ++j)
      best = std::min(best, static_cast<double>(k - j) * c + lm[j]);
    out[k] = best;
  }
  return out;
}

double max_spread(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double d = std::abs(a[k] - b[k]) / static_cast<double>(k);
    if (std::isfinite(d)) s = std::max(s, d);
  }
  return s;
}

// Values on the uniform grid y_i = y0 + i h with cubic Lagrange interpolation.
struct Table {
  double y0 = 0.0;
  double h = 1.0;
  std::vector<double> v;

  double y(std::size_t i) const { return y0 + h * static_cast<double>(i); }
  double at(double yy) const {
    const double s = (yy - y0) / h;
    const auto n = static_cast<std::ptrdiff_t>(v.size());
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(std::floor(s));
    j = std::clamp<std::ptrdiff_t>(j, 1, n - 3);
    double out = 0.0;
    for (std::ptrdiff_t a = j - 1; a <= j + 2; ++a) {
      double w = 1.0;
      for (std::ptrdiff_t b = j - 1; b <= j + 2; ++b)
        if (b != a) w *= (s - static_cast<double>(b)) / static_cast<double>(a - b);
      out += w * v[static_cast<std::size_t>(a)];
    }
    return out;
  }
};

struct TableMax {
  double value;
  std::size_t index;
};

// sup_y (c y - f(y)) over the table; discrete argmax refined on the interpolant.
TableMax table_conjugate(const Table& t, double c) {
  std::size_t arg = 0;
  double best = -kInf;
  for (std::size_t i = 0; i < t.v.size(); ++i) {
    const double g = c * t.y(i) - t.v[i];
    if (g > best) {
      best = g;
      arg = i;
    }
  }
  if (arg == 0 || arg + 1 >= t.v.size() || t.v.size() < 4) return {best, arg};
  constexpr int bits = std::numeric_limits<double>::digits / 2;
  std::uintmax_t iters = 100;
  auto r = boost::math::tools::brent_find_minima(
      [&](double yy) { return t.at(yy) - c * yy; }, t.y(arg - 1), t.y(arg + 1), bits, iters);
  return {std::max(best, -r.second), arg};
}

constexpr double kStep = 1.0 / 32.0;
// P is analytic in log r, so a coarser grid suffices for Q
constexpr double kStepQ = 1.0 / 16.0;

}  // namespace

const char* to_string(Construction c) {
  switch (c) {
    case Construction::L: return "L";
    case Construction::UnderlineL: return "underlineL";
    case Construction::S: return "S";
    case Construction::K: return "K";
    case Construction::Q: return "Q";
  }
  return "?";
}

Construction parse_construction(const std::string& s) {
  if (s == "L") return Construction::L;
  if (s == "underlineL") return Construction::UnderlineL;
  if (s == "S") return Construction::S;
  if (s == "K") return Construction::K;
  if (s == "Q") return Construction::Q;
  throw Error(ErrorKind::InvalidArgument, "unknown construction '" + s + "'");
}

DerivedSeq derive_L(const WeightSeq& m, std::size_t n) {
  require_non_quasianalytic(m);
  const auto lm = m.log_m_table(n);
  std::vector<double> t_mid(n + 1, 0.0), t_lo(n + 1, 0.0), t_hi(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const Interval t = m.tail(k);
    t_mid[k] = std::log(t.mid());
    t_lo[k] = std::log(t.lo);
    t_hi[k] = std::log(t.hi);
  }
  DerivedSeq out;
  auto mid = l_table(lm, t_mid, n);
  out.tail_spread = max_spread(l_table(lm, t_lo, n), l_table(lm, t_hi, n));
  out.seq = finish("L(" + m.name() + ")", std::move(mid));
  return out;
}

DerivedSeq derive_S(const WeightSeq& m, std::size_t n) {
  require_non_quasianalytic(m);
  auto build = [&](auto pick, std::vector<double>* sig, std::vector<double>* tau) {
    std::vector<double> ta(n + 1, 0.0), sg(n + 1, 1.0), ls(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k)
      ta[k] = static_cast<double>(k) / mu(m, k) + pick(m.tail(k));
    for (std::size_t k = 1; k <= n; ++k) {
      sg[k] = ta[1] * static_cast<double>(k) / ta[k];
      ls[k] = ls[k - 1] + std::log(sg[k]);
    }
    if (sig) *sig = sg;
    if (tau) *tau = ta;
    return ls;
  };
  DerivedSeq out;
  auto mid = build([](const Interval& t) { return t.mid(); }, &out.sigma, &out.tau);
  out.tail_spread = max_spread(build([](const Interval& t) { return t.lo; }, nullptr, nullptr),
                               build([](const Interval& t) { return t.hi; }, nullptr, nullptr));
  for (std::size_t k = 1; k <= n; ++k) out.sigma_scale = std::max(out.sigma_scale, out.sigma[k] / mu(m, k));
  std::ostringstream os;
  os << "sigma <= c mu with c = " << out.sigma_scale;
  out.note = os.str();
  out.seq = finish("S(" + m.name() + ")", std::move(mid));
  return out;
}

DerivedSeq derive_K(const WeightSeq& m, std::size_t n, const TabulationOptions& opts) {
  require_non_quasianalytic(m);
  const WeightFn w = omega_tilde_from_seq(m);
  if (!w.envelope())
    throw Error(ErrorKind::MissingEnvelope, m.name() + ": associated function has no envelope");
  auto kap = [&](double y) { return kappa(w, std::exp(y), opts.kappa).value; };

  // right end: slope of y -> kappa(e^y) must exceed n
  double Y = 4.0;
  for (;;) {
    const double slope = (kap(Y) - kap(Y - 0.5)) / 0.5;
    if (slope > static_cast<double>(n) + 1.0) break;
    if (Y >= 600.0)
      throw Error(ErrorKind::UnboundedConjugate, m.name() + ": kappa grows too slowly for K");
    Y = std::min(2 * Y, 600.0);
  }
  const auto count = static_cast<std::size_t>(std::ceil(Y / kStep));
  Table tab{0.0, kStep, std::vector<double>(count + 1)};
  // J(y) = int_y^inf phi(v) e^{-v} dv, accumulated backwards; kappa(e^y) = e^y J(y)
  const QuadratureOptions& seg = opts.segment;
  double J = kap(tab.y(count)) * std::exp(-tab.y(count));
  tab.v[count] = J * std::exp(tab.y(count));
  for (std::size_t i = count; i-- > 0;) {
    J += integrate([&](double v) { return w.phi(v) * std::exp(-v); }, tab.y(i), tab.y(i + 1), seg)
             .value;
    tab.v[i] = J * std::exp(tab.y(i));
  }
  const double k1 = tab.v[0];
  for (double& v : tab.v) v -= k1;

  std::vector<double> lk(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) lk[j] = table_conjugate(tab, static_cast<double>(j)).value;
  DerivedSeq out;
  std::ostringstream os;
  os << "kappa(1) = " << k1 << " subtracted; y-grid [0, " << Y << "] step " << kStep;
  out.note = os.str();
  out.seq = finish("K(" + m.name() + ")", std::move(lk));
  return out;
}

DerivedSeq derive_Q(const WeightSeq& m, std::size_t n, const TabulationOptions& opts) {
  require_non_quasianalytic(m);
  const WeightFn w = omega_tilde_from_seq(m);
  if (!w.envelope())
    throw Error(ErrorKind::MissingEnvelope, m.name() + ": associated function has no envelope");
  const QuadratureOptions& qo = opts.poisson;
  auto P = [&](double y) { return poisson_imag(w, std::exp(y), qo).value; };

  const double ten = std::log(10.0);
  const double cap = 100 * ten;
  double ylo = -2 * ten, yhi = 6 * ten;
  // half of P on the grid; the objective is (k + 1/2) y - P/2
  Table tab;
  tab.h = kStepQ;
  auto fill = [&](double lo, double hi) {
    const double start = std::floor(lo / kStepQ) * kStepQ;
    const auto cnt = static_cast<std::size_t>(std::llround((hi - start) / kStepQ));
    std::vector<double> v(cnt + 1);
    // reuse already computed nodes
    for (std::size_t i = 0; i <= cnt; ++i) {
      const double y = start + kStepQ * static_cast<double>(i);
      const double s = (y - tab.y0) / kStepQ;
      const auto idx = static_cast<std::ptrdiff_t>(std::llround(s));
      if (!tab.v.empty() && idx >= 0 && idx < static_cast<std::ptrdiff_t>(tab.v.size()))
        v[i] = tab.v[static_cast<std::size_t>(idx)];
      else
        v[i] = 0.5 * P(y);
    }
    tab.y0 = start;
    tab.v = std::move(v);
  };
  fill(ylo, yhi);
  for (;;) {
    const auto top = table_conjugate(tab, static_cast<double>(n) + 0.5).index;
    const auto bottom = table_conjugate(tab, 0.5).index;
    const bool grow_hi = top + 3 >= tab.v.size();
    const bool grow_lo = bottom <= 1;
    if (!grow_hi && !grow_lo) break;
    if ((grow_hi && yhi >= cap - 1e-9) || (grow_lo && ylo <= -cap + 1e-9)) {
      throw Error(ErrorKind::MaximizerUnbounded,
                  m.name() + ": Q maximizer outside r in [1e-100, 1e100]");
    }
    if (grow_hi) yhi = std::min(cap, yhi + ten);
    if (grow_lo) ylo = std::max(-cap, ylo - ten);
    fill(ylo, yhi);
  }
  std::vector<double> lq(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    lq[k] = table_conjugate(tab, static_cast<double>(k) + 0.5).value;
  // Q_0 need not be 1; the sequence is reported relative to it
  const double q0 = lq[0];
  for (double& v : lq) v -= q0;
  DerivedSeq out;
  out.log_offset = q0;
  std::ostringstream os;
  os << "log Q_0 = " << q0 << " divided out; r in [" << std::exp(ylo) << ", " << std::exp(yhi)
     << "]";
  out.note = os.str();
  out.seq = finish("Q(" + m.name() + ")", std::move(lq));
  return out;
}

WeightSeq seq_L(const WeightSeq& m, std::size_t n) { return derive_L(m, n).seq; }
WeightSeq seq_S(const WeightSeq& m, std::size_t n) { return derive_S(m, n).seq; }
WeightSeq seq_K(const WeightSeq& m, std::size_t n) { return derive_K(m, n).seq; }
WeightSeq seq_Q(const WeightSeq& m, std::size_t n) { return derive_Q(m, n).seq; }

WeightSeq seq_underline_L(const WeightSeq& m, std::size_t n) {
  const std::size_t ext = n + std::max<std::size_t>(16, n / 4);
  return log_convex_minorant(seq_L(m, ext), n).renamed("underlineL(" + m.name() + ")");
}

WeightSeq derive(const WeightSeq& m, Construction c, std::size_t n) {
  switch (c) {
    case Construction::L: return seq_L(m, n);
    case Construction::UnderlineL: return seq_underline_L(m, n);
    case Construction::S: return seq_S(m, n);
    case Construction::K: return seq_K(m, n);
    case Construction::Q: return seq_Q(m, n);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown construction");
}

WeightMatrix derive_family(const WeightMatrix& mat, Construction c, std::size_t n) {
  return WeightMatrix(std::string(to_string(c)) + "(" + mat.name() + ")",
                      [mat, c, n](double alpha) { return derive(mat.member(alpha), c, n); },
                      mat.grid());
}

}  // namespace uw
