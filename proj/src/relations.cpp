#include "uw/relations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uw/errors.hpp"

namespace uw {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> index_axis(std::size_t first, std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = static_cast<double>(first + i);
  return x;
}

Verdict seq_trend(std::string relation, std::string lhs, std::string rhs,
                  const std::vector<double>& vals, const TrendConfig& cfg) {
  const auto x = index_axis(1, vals.size());
  const TrendResult tr = bounded_above(x, vals, 2.0, cfg);
  Verdict v = make_verdict(std::move(relation), std::move(lhs), std::move(rhs), tr, x, vals);
  v.note = "sup " + fmt(tr.max_value) + ", slope " + fmt(tr.slope);
  return v;
}

std::vector<double> log_tails(const WeightSeq& m, std::size_t from, std::size_t to) {
  tail_recip_mu(m, 1, kDefaultTailTerms, true);
  std::vector<double> out(to + 1, 0.0);
  for (std::size_t k = from; k <= to; ++k) out[k] = std::log(m.tail(k).mid());
  return out;
}

// Resolves "for all alpha exists beta" from per-pair verdicts.
Verdict forall_exists(std::string relation, const WeightMatrix& a, const WeightMatrix& b,
                      const std::function<Verdict(double, double)>& pair) {
  Verdict v;
  v.relation = std::move(relation);
  v.lhs = a.name();
  v.rhs = b.name();
  v.grid = a.grid();
  std::vector<Status> per_alpha;
  for (double alpha : a.grid()) {
    Pairing p;
    p.alpha = alpha;
    bool all_fail = true;
    // beta = alpha first when both grids contain it, then ascending
    std::vector<double> order;
    if (std::find(b.grid().begin(), b.grid().end(), alpha) != b.grid().end()) order.push_back(alpha);
    for (double beta : b.grid())
      if (beta != alpha || order.empty()) order.push_back(beta);
    for (double beta : order) {
      const Verdict r = pair(alpha, beta);
      if (r.holds()) {
        p.beta = beta;
        p.status = Status::Holds;
        if (v.trajectory.empty()) v.trajectory = r.trajectory;
        break;
      }
      if (!r.fails()) all_fail = false;
    }
    if (!p.beta) {
      p.status = all_fail ? Status::Fails : Status::Inconclusive;
      if (std::isnan(v.witness)) v.witness = alpha;
    }
    per_alpha.push_back(p.status);
    v.pairing.push_back(p);
  }
  v.status = Status::Holds;
  for (Status s : per_alpha) v.status = conjunction({v.status, s});
  std::ostringstream os;
  os << "pairs";
  for (const auto& p : v.pairing) {
    os << " " << p.alpha << "->";
    if (p.beta) os << *p.beta;
    else os << "none";
  }
  v.note = os.str();
  return v;
}

}  // namespace

std::vector<double> default_s_grid() { return dyadic_grid(0, 10); }

Verdict prec_SV(const WeightSeq& mp, const WeightSeq& m, std::size_t n,
                const std::vector<double>& s_grid, const TrendConfig& cfg) {
  if (!m.is_weight_sequence())
    throw Error(ErrorKind::NotAWeightSequence, m.name() + " is not a weight sequence");
  const auto lmp = mp.log_m_table(n);
  const auto lm = m.log_m_table(n);
  const auto lt = log_tails(m, 1, n);
  Verdict out;
  bool all_fail = true;
  for (double s : s_grid) {
    const double ls = std::log(s);
    std::vector<double> vals(n);
    for (std::size_t j = 1; j <= n; ++j) {
      double best = -kInf;
      const double top = lmp[j] - static_cast<double>(j) * ls;
      for (std::size_t i = 0; i < j; ++i)
        best = std::max(best, (top - lm[i]) / static_cast<double>(j - i));
      vals[j - 1] = best - std::log(static_cast<double>(j)) + lt[j];
    }
    Verdict v = seq_trend("prec_SV", mp.name(), m.name(), vals, cfg);
    v.grid = s_grid;
    if (v.holds()) {
      v.witness = s;
      v.note = "s = " + fmt(s) + "; " + v.note;
      return v;
    }
    if (!v.fails()) all_fail = false;
    out = v;
  }
  out.status = all_fail ? Status::Fails : Status::Inconclusive;
  out.note = "no s in grid bounds F_s; last " + out.note;
  return out;
}

Verdict prec_gamma1(const WeightSeq& mp, const WeightSeq& m, std::size_t n,
                    const TrendConfig& cfg) {
  const auto lt = log_tails(m, 1, n);
  std::vector<double> vals(n);
  for (std::size_t j = 1; j <= n; ++j)
    vals[j - 1] = mp.log_mu(j) - std::log(static_cast<double>(j)) + lt[j];
  return seq_trend("prec_gamma1", mp.name(), m.name(), vals, cfg);
}

Verdict implication(std::string name, const Verdict& antecedent, const Verdict& consequent) {
  Verdict v;
  v.relation = std::move(name);
  v.lhs = antecedent.relation + "(" + antecedent.lhs + (antecedent.rhs.empty() ? "" : ", " + antecedent.rhs) + ")";
  v.rhs = consequent.relation + "(" + consequent.lhs + (consequent.rhs.empty() ? "" : ", " + consequent.rhs) + ")";
  std::string tag;
  if (antecedent.fails()) {
    v.status = Status::Holds;
    tag = "vacuous";
  } else if (antecedent.holds() && consequent.holds()) {
    v.status = Status::Holds;
    tag = "respected";
  } else if (antecedent.holds() && consequent.fails()) {
    v.status = Status::Fails;
    tag = "violated";
  } else {
    v.status = Status::Inconclusive;
    tag = "skipped";
  }
  v.note = tag + " (antecedent " + to_string(antecedent.status) + ", consequent " +
           to_string(consequent.status) + ")";
  return v;
}

Verdict gamma1_implies_SV_check(const WeightSeq& mp, const WeightSeq& m, std::size_t n) {
  return implication("gamma1_implies_SV", prec_gamma1(mp, m, n), prec_SV(mp, m, n));
}

Verdict cond_Mmg(const WeightSeq& m, std::size_t n, const TrendConfig& cfg) {
  std::vector<double> lt;
  try {
    lt = log_tails(m, 2, 2 * n);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DivergentTail) throw;
    Verdict v;
    v.relation = "Mmg";
    v.lhs = m.name();
    v.note = e.what();
    return v;
  }
  std::vector<double> vals(n);
  for (std::size_t j = 1; j <= n; ++j)
    vals[j - 1] = -(m.log_mu(j) - std::log(static_cast<double>(j)) + lt[2 * j]);
  return seq_trend("Mmg", m.name(), "", vals, cfg);
}

Verdict matrix_braces(const WeightMatrix& a, const WeightMatrix& b, std::string relation,
                      const SeqRelation& rel) {
  return forall_exists(std::move(relation), a, b, [&](double alpha, double beta) {
    return rel(a.member(alpha), b.member(beta));
  });
}

Verdict matrix_braces_preceq(const WeightMatrix& a, const WeightMatrix& b, std::size_t n,
                             const TrendConfig& cfg) {
  return matrix_braces(a, b, "braces_preceq", [&](const WeightSeq& x, const WeightSeq& y) {
    return seq_preceq(x, y, n, cfg);
  });
}

Verdict matrix_braces_equivalent(const WeightMatrix& a, const WeightMatrix& b, std::size_t n,
                                 const TrendConfig& cfg) {
  const Verdict ab = matrix_braces_preceq(a, b, n, cfg);
  const Verdict ba = matrix_braces_preceq(b, a, n, cfg);
  Verdict v = ab;
  v.relation = "braces_equivalent";
  v.status = conjunction({ab.status, ba.status});
  v.pairing.insert(v.pairing.end(), ba.pairing.begin(), ba.pairing.end());
  v.note = "forward: " + ab.note + "; backward: " + ba.note;
  return v;
}

Verdict r_moderate_growth(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg) {
  return forall_exists("r_moderate_growth", mat, mat, [&](double alpha, double beta) {
    const auto la = mat.member(alpha).log_m_table(n);
    const auto lb = mat.member(beta).log_m_table(n);
    std::vector<double> vals;
    for (std::size_t m = 2; m <= n; ++m) {
      double best = -kInf;
      for (std::size_t j = 1; j <= m / 2; ++j) best = std::max(best, la[m] - lb[j] - lb[m - j]);
      vals.push_back(best / static_cast<double>(m));
    }
    std::vector<double> x = index_axis(2, vals.size());
    const TrendResult tr = bounded_above(x, vals, 2.0, cfg);
    return make_verdict("r_moderate_growth", "", "", tr, x, vals);
  });
}

namespace {

Verdict liminf_family(const char* name, const WeightMatrix& mat, std::size_t n, std::size_t factor,
                      const TrendConfig& cfg) {
  return forall_exists(name, mat, mat, [&](double alpha, double beta) {
    const WeightSeq a = mat.member(alpha), b = mat.member(beta);
    const auto lt = log_tails(a, factor, factor * n);
    std::vector<double> vals(n);
    for (std::size_t k = 1; k <= n; ++k)
      vals[k - 1] = -(b.log_mu(k) - std::log(static_cast<double>(k)) + lt[factor * k]);
    return seq_trend(name, a.name(), b.name(), vals, cfg);
  });
}

}  // namespace

Verdict cond_liminf(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg) {
  return liminf_family("liminf", mat, n, 1, cfg);
}

Verdict cond_liminf2(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg) {
  return liminf_family("liminf2", mat, n, 2, cfg);
}

Verdict cond_roquS(const WeightMatrix& s_family, std::size_t n, const TrendConfig& cfg) {
  return forall_exists("roquS", s_family, s_family, [&](double alpha, double beta) {
    const WeightSeq a = s_family.member(alpha), b = s_family.member(beta);
    std::vector<double> vals(n);
    for (std::size_t j = 1; j <= n; ++j)
      vals[j - 1] = a.log_mu(j) - b.log_m(j) / static_cast<double>(j);
    return seq_trend("roquS", a.name(), b.name(), vals, cfg);
  });
}

Verdict cond_invmg(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg) {
  return forall_exists("invmg", mat, mat, [&](double alpha, double beta) {
    const WeightSeq a = mat.member(alpha), b = mat.member(beta);
    std::vector<double> vals(n);
    for (std::size_t j = 1; j <= n; ++j) vals[j - 1] = 2 * a.log_mu(j) - b.log_mu(2 * j);
    return seq_trend("invmg", a.name(), b.name(), vals, cfg);
  });
}

Verdict lambda_membership(const std::vector<double>& log_a, const WeightSeq& m, std::size_t n,
                          const TrendConfig& cfg) {
  if (log_a.size() < n + 1)
    throw Error(ErrorKind::InvalidArgument, "coefficient sequence shorter than n + 1");
  const auto lm = m.log_m_table(n);
  Verdict last;
  bool all_fail = true;
  // sigma^k swamps any growth visible in k <= n once sigma is near n, so the
  // dyadic grid stops at n/8
  const int top = std::clamp(static_cast<int>(std::floor(std::log2(static_cast<double>(n) / 8))), 0, 10);
  const auto grid = dyadic_grid(0, top);
  for (double s : grid) {
    const double ls = std::log(s);
    std::vector<double> vals(n);
    for (std::size_t k = 1; k <= n; ++k)
      vals[k - 1] = log_a[k] - static_cast<double>(k) * ls - lm[k];
    Verdict v = seq_trend("lambda_membership", "a", m.name(), vals, cfg);
    v.grid = grid;
    if (v.holds()) {
      v.witness = s;
      v.note = "sigma = " + fmt(s) + "; " + v.note;
      return v;
    }
    if (!v.fails()) all_fail = false;
    last = v;
  }
  last.status = all_fail ? Status::Fails : Status::Inconclusive;
  last.note = "no sigma in grid; last " + last.note;
  return last;
}

Verdict lambda_membership(const std::vector<double>& log_a, const WeightMatrix& mat,
                          std::size_t n, const TrendConfig& cfg) {
  Verdict last;
  bool all_fail = true;
  for (double alpha : mat.grid()) {
    Verdict v = lambda_membership(log_a, mat.member(alpha), n, cfg);
    v.rhs = mat.name();
    if (v.holds()) {
      v.pairing.push_back({alpha, v.witness, Status::Holds});
      return v;
    }
    if (!v.fails()) all_fail = false;
    last = v;
  }
  last.rhs = mat.name();
  last.status = all_fail ? Status::Fails : Status::Inconclusive;
  return last;
}

}  // namespace uw
