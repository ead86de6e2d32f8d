#include "uw/seq.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "uw/errors.hpp"

namespace uw {
namespace {

constexpr std::size_t kCacheCap = std::size_t{1} << 20;

struct TailTable {
  std::vector<double> suffix;  // suffix[k] = sum_{l=k}^{n_max} 1/mu_l, k in 1..n_max
  double remainder_hi = 0.0;   // bound on sum_{l > n_max} 1/mu_l
  double remainder_lo = 0.0;   // same under the fitted law, from below
  double fit_exponent = 0.0;
  double mu_last = 0.0;
  std::size_t n_max = 0;
};

}  // namespace

struct WeightSeq::State {
  std::string name;
  LogEval eval;
  SeqOptions opts;
  mutable std::mutex mutex;
  mutable std::vector<double> cache;
  mutable std::map<std::size_t, std::shared_ptr<const TailTable>> tails;
};

WeightSeq::WeightSeq(std::string name, LogEval log_m, SeqOptions opts)
    : state_(std::make_shared<State>()) {
  state_->name = std::move(name);
  state_->eval = std::move(log_m);
  state_->opts = std::move(opts);
}

WeightSeq WeightSeq::from_table(std::string name, std::vector<double> log_m,
                                bool weight_sequence) {
  if (log_m.empty()) throw Error(ErrorKind::InvalidArgument, "empty sequence table");
  SeqOptions opts;
  opts.weight_sequence = weight_sequence;
  opts.limit = log_m.size() - 1;
  auto table = std::make_shared<const std::vector<double>>(std::move(log_m));
  return WeightSeq(std::move(name), [table](std::size_t k) { return (*table)[k]; }, opts);
}

const std::string& WeightSeq::name() const { return state_->name; }
bool WeightSeq::is_weight_sequence() const { return state_->opts.weight_sequence; }
std::optional<std::size_t> WeightSeq::limit() const { return state_->opts.limit; }
bool WeightSeq::has_real_extension() const {
  return static_cast<bool>(state_->opts.log_m_real);
}
bool WeightSeq::has_analytic_tail() const { return static_cast<bool>(state_->opts.tail); }
const std::string& WeightSeq::tail_kind() const { return state_->opts.tail_kind; }

double WeightSeq::log_m(std::size_t k) const {
  const auto& lim = state_->opts.limit;
  if (lim && k > *lim) {
    throw Error(ErrorKind::TruncationExhausted,
                state_->name + ": index " + std::to_string(k) + " beyond truncation " +
                    std::to_string(*lim));
  }
  if (k >= kCacheCap) return state_->eval(k);
  std::lock_guard lock(state_->mutex);
  auto& cache = state_->cache;
  if (k >= cache.size()) {
    std::size_t target = std::max<std::size_t>(k + 1, std::min(kCacheCap, 2 * cache.size()));
    if (lim) target = std::min(target, *lim + 1);
    const std::size_t start = cache.size();
    cache.resize(target);
    for (std::size_t i = start; i < target; ++i) cache[i] = state_->eval(i);
  }
  return cache[k];
}

double WeightSeq::log_m_real(double k) const {
  if (!state_->opts.log_m_real)
    throw Error(ErrorKind::TruncationExhausted, state_->name + ": no real extension");
  return state_->opts.log_m_real(k);
}

double WeightSeq::log_mu(std::size_t k) const {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "mu index must be >= 1");
  return log_m(k) - log_m(k - 1);
}

std::vector<double> WeightSeq::log_m_table(std::size_t n) const {
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = log_m(k);
  return out;
}

Interval WeightSeq::tail(std::size_t k, std::size_t n_max) const {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "tail index must be >= 1");
  if (state_->opts.tail) return state_->opts.tail(k);

  if (state_->opts.limit) n_max = std::min(n_max, *state_->opts.limit);
  if (n_max < 8) throw Error(ErrorKind::TruncationExhausted, state_->name + ": too short for a tail");

  std::shared_ptr<const TailTable> table;
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->tails.find(n_max);
    if (it != state_->tails.end()) table = it->second;
  }
  if (!table) {
    auto t = std::make_shared<TailTable>();
    t->n_max = n_max;
    std::vector<double> lmu(n_max + 1, 0.0);
    double prev = log_m(0);
    for (std::size_t l = 1; l <= n_max; ++l) {
      const double cur = log_m(l);
      lmu[l] = cur - prev;
      prev = cur;
    }
    t->suffix.assign(n_max + 2, 0.0);
    for (std::size_t l = n_max; l >= 1; --l) t->suffix[l] = t->suffix[l + 1] + std::exp(-lmu[l]);
    // least-squares slope of log mu against log l over [n_max/2, n_max]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t l = n_max / 2; l <= n_max; ++l) {
      const double x = std::log(static_cast<double>(l));
      sx += x;
      sy += lmu[l];
      sxx += x * x;
      sxy += x * lmu[l];
      ++cnt;
    }
    t->fit_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    t->mu_last = std::exp(lmu[n_max]);
    const double p = t->fit_exponent;
    // remainder under the fitted law mu_l ~ mu_N (l/N)^p: integrals from N + 1 and from N
    const double N = static_cast<double>(n_max);
    if (p > 1.0 + 1e-6) {
      t->remainder_hi = N / ((p - 1.0) * t->mu_last);
      t->remainder_lo = t->remainder_hi * std::pow(N / (N + 1.0), p - 1.0);
    } else {
      t->remainder_hi = kInf;
    }
    std::lock_guard lock(state_->mutex);
    table = state_->tails.emplace(n_max, std::move(t)).first->second;
  }

  if (k <= table->n_max) {
    const double s = table->suffix[k];
    return {s + table->remainder_lo, s + table->remainder_hi};
  }
  // beyond the partial sums only the fitted power-law bound is available
  const double p = table->fit_exponent;
  if (!(p > 1.0 + 1e-6)) return {0.0, kInf};
  const double N = static_cast<double>(table->n_max);
  const double c = std::pow(N, p) / ((p - 1.0) * table->mu_last);
  return {c * std::pow(static_cast<double>(k), 1.0 - p),
          c * std::pow(static_cast<double>(k) - 1.0, 1.0 - p)};
}

WeightSeq WeightSeq::renamed(std::string name) const {
  WeightSeq copy = *this;
  // fresh state sharing the evaluator; caches are rebuilt lazily
  copy.state_ = std::make_shared<State>();
  copy.state_->name = std::move(name);
  copy.state_->eval = state_->eval;
  copy.state_->opts = state_->opts;
  return copy;
}

double mu(const WeightSeq& seq, std::size_t k) { return std::exp(seq.log_mu(k)); }

namespace {

Verdict monotone_scan(const WeightSeq& seq, std::size_t n, bool strong, const char* relation) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "monotonicity scan needs n >= 2");
  Verdict v;
  v.relation = relation;
  v.lhs = seq.name();
  v.status = Status::Holds;
  auto value = [&](std::size_t k) {
    const double lm = seq.log_mu(k);
    return strong ? lm - std::log(static_cast<double>(k)) : lm;
  };
  double prev = value(1);
  for (std::size_t k = 1; k < n; ++k) {
    const double next = value(k + 1);
    if (next < prev - kLogTol) {
      v.status = Status::Fails;
      v.witness = static_cast<double>(k + 1);  // first index whose quotient dropped
      std::ostringstream os;
      os << "log quotient drops from " << prev << " at k=" << k << " to " << next << " at k="
         << k + 1;
      v.note = os.str();
      return v;
    }
    prev = next;
  }
  v.note = "checked k < " + std::to_string(n);
  return v;
}

}  // namespace

Verdict is_log_convex(const WeightSeq& seq, std::size_t n) {
  return monotone_scan(seq, n, false, "log_convex");
}

Verdict is_strongly_log_convex(const WeightSeq& seq, std::size_t n) {
  return monotone_scan(seq, n, true, "strongly_log_convex");
}

Interval tail_recip_mu(const WeightSeq& seq, std::size_t k, std::size_t n_max,
                       bool require_finite) {
  Interval t = seq.tail(k, n_max);
  if (require_finite && !std::isfinite(t.hi)) {
    throw Error(ErrorKind::DivergentTail,
                seq.name() + ": sum of 1/mu has no finite bracket (quasianalytic?)");
  }
  return t;
}

Verdict is_non_quasianalytic(const WeightSeq& seq, std::size_t n_max) {
  Verdict v;
  v.relation = "non_quasianalytic";
  v.lhs = seq.name();
  const Interval t = seq.tail(1, n_max);
  std::ostringstream os;
  os << "tail(1) in [" << t.lo << ", " << t.hi << "]";
  if (std::isfinite(t.hi)) {
    v.status = Status::Holds;
    v.note = os.str();
    return v;
  }
  // divergence certificate: mu_k / k stays bounded, i.e. log(mu_k / k) bounded above
  std::size_t n = n_max;
  if (seq.limit()) n = std::min(n, *seq.limit());
  n = std::min<std::size_t>(n, 4096);
  std::vector<double> vals;
  for (std::size_t k = 1; k <= n; ++k)
    vals.push_back(seq.log_mu(k) - std::log(static_cast<double>(k)));
  const TrendResult tr = bounded_above_seq(1, vals);
  v.status = tr.status == Status::Holds ? Status::Fails : Status::Inconclusive;
  v.witness = tr.argmax;
  os << "; mu_k/k bounded: " << to_string(tr.status);
  v.note = os.str();
  return v;
}

Verdict has_moderate_growth(const WeightSeq& seq, std::size_t n, const TrendConfig& cfg) {
  const auto lm = seq.log_m_table(n);
  std::vector<double> x, vals;
  std::vector<std::size_t> arg_j;
  for (std::size_t m = 2; m <= n; ++m) {
    double best = -kInf;
    std::size_t bj = 1;
    for (std::size_t j = 1; j <= m / 2; ++j) {
      const double g = lm[m] - lm[j] - lm[m - j];
      if (g > best) {
        best = g;
        bj = j;
      }
    }
    x.push_back(static_cast<double>(m));
    vals.push_back(best / static_cast<double>(m));
    arg_j.push_back(bj);
  }
  const TrendResult tr = bounded_above(x, vals, 2.0, cfg);
  Verdict v = make_verdict("moderate_growth", seq.name(), "", tr, x, vals);
  std::ostringstream os;
  os << "sup log C = " << tr.max_value;
  if (std::isfinite(tr.argmax)) {
    const auto m = static_cast<std::size_t>(tr.argmax);
    os << " at (j,k)=(" << arg_j[m - 2] << "," << m - arg_j[m - 2] << ")";
  }
  v.note = os.str();
  return v;
}

Verdict seq_preceq(const WeightSeq& m, const WeightSeq& n, std::size_t n_terms,
                   const TrendConfig& cfg) {
  std::vector<double> x, vals;
  for (std::size_t k = 1; k <= n_terms; ++k) {
    x.push_back(static_cast<double>(k));
    vals.push_back((m.log_m(k) - n.log_m(k)) / static_cast<double>(k));
  }
  const TrendResult tr = bounded_above(x, vals, 2.0, cfg);
  Verdict v = make_verdict("preceq", m.name(), n.name(), tr, x, vals);
  std::ostringstream os;
  os << "sup_k log(M_k/N_k)^(1/k) ~ " << tr.max_value << ", slope " << tr.slope;
  v.note = os.str();
  return v;
}

Verdict seq_equivalent(const WeightSeq& m, const WeightSeq& n, std::size_t n_terms,
                       const TrendConfig& cfg) {
  const Verdict a = seq_preceq(m, n, n_terms, cfg);
  const Verdict b = seq_preceq(n, m, n_terms, cfg);
  Verdict v;
  v.relation = "equivalent";
  v.lhs = m.name();
  v.rhs = n.name();
  v.status = conjunction({a.status, b.status});
  v.witness = a.status != Status::Holds ? a.witness : b.witness;
  v.trajectory = a.trajectory;
  v.note = std::string("lhs<=rhs: ") + to_string(a.status) + ", rhs<=lhs: " + to_string(b.status);
  return v;
}

WeightSeq power_shift(const WeightSeq& seq, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "power_shift needs n >= 1");
  if (n == 1) return seq;
  SeqOptions opts;
  // log-convexity survives the shift; other positive sequences stay positive
  opts.weight_sequence = seq.is_weight_sequence();
  if (seq.limit()) opts.limit = *seq.limit() / n;
  const double dn = static_cast<double>(n);
  if (seq.has_real_extension())
    opts.log_m_real = [seq, dn](double x) { return seq.log_m_real(dn * x) / dn; };
  return WeightSeq(seq.name() + "^[" + std::to_string(n) + "]",
                   [seq, n, dn](std::size_t j) { return seq.log_m(n * j) / dn; }, opts);
}

WeightSeq log_convex_minorant(const WeightSeq& seq, std::size_t n) {
  std::size_t top = n + std::max<std::size_t>(16, n / 4);
  if (seq.limit()) top = std::min(top, *seq.limit());
  if (top < n) throw Error(ErrorKind::TruncationExhausted, seq.name() + ": shorter than n");

  const auto lm = seq.log_m_table(top);
  // Andrew's monotone chain, lower hull only; points arrive sorted by k.
  std::vector<std::size_t> hull;
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    const double ax = static_cast<double>(a) - static_cast<double>(o), ay = lm[a] - lm[o];
    const double bx = static_cast<double>(b) - static_cast<double>(o), by = lm[b] - lm[o];
    return ax * by - ay * bx;
  };
  for (std::size_t k = 0; k <= top; ++k) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), k) <= 0)
      hull.pop_back();
    hull.push_back(k);
  }
  std::vector<double> out(n + 1);
  std::size_t seg = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    while (seg + 1 < hull.size() && hull[seg + 1] < k) ++seg;
    const std::size_t a = hull[seg];
    if (a == k) {
      out[k] = lm[k];
      continue;
    }
    const std::size_t b = hull[seg + 1];
    if (b == k) {
      out[k] = lm[k];
      continue;
    }
    const double w = static_cast<double>(k - a) / static_cast<double>(b - a);
    out[k] = (1.0 - w) * lm[a] + w * lm[b];
  }
  return WeightSeq::from_table("minorant(" + seq.name() + ")", std::move(out), true);
}

std::pair<WeightSeq, std::string> normalize_sequence(const WeightSeq& seq) {
  const double l0 = seq.log_m(0);
  const double l1 = seq.log_m(1) - l0;
  const double shift = l1 < 0 ? -l1 : 0.0;  // multiply by e^{shift k}
  if (std::abs(l0) <= kLogTol && shift == 0.0) return {seq, ""};
  std::ostringstream os;
  os << "renormalized: divided by M_0 = exp(" << l0 << ")";
  if (shift > 0) os << ", multiplied by exp(" << shift << ")^k so that M_1 >= M_0";
  SeqOptions opts;
  opts.weight_sequence = seq.is_weight_sequence();
  opts.limit = seq.limit();
  if (seq.has_real_extension())
    opts.log_m_real = [seq, l0, shift](double x) { return seq.log_m_real(x) - l0 + shift * x; };
  WeightSeq out(seq.name(),
                [seq, l0, shift](std::size_t k) {
                  return seq.log_m(k) - l0 + shift * static_cast<double>(k);
                },
                opts);
  return {out, os.str()};
}

}  // namespace uw
