#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uw/interval.hpp"
#include "uw/verdict.hpp"

namespace uw {

// Additive tolerance for comparisons in the log domain.
inline constexpr double kLogTol = 1e-9;
// Default truncation for partial sums of 1/mu when no analytic tail exists.
inline constexpr std::size_t kDefaultTailTerms = std::size_t{1} << 16;

struct SeqOptions {
  // Declared log-convex with mu_k -> infinity.
  bool weight_sequence = false;
  // Largest valid index; unset means the evaluator is valid for every k.
  std::optional<std::size_t> limit;
  // Real-argument extension x -> log M(x), used for associated functions far
  // beyond any integer index that fits in memory.
  std::function<double(double)> log_m_real;
  // Analytic bracket of sum_{l >= k} 1/mu_l.
  std::function<Interval(std::size_t)> tail;
  std::string tail_kind = "generic";
};

/// A positive sequence M = (M_k) held in the log domain, log M_0 = 0.
///
/// Values are produced by a pure evaluator and memoized; copies share the
/// cache, which is internally synchronized.
class WeightSeq {
 public:
  using LogEval = std::function<double(std::size_t)>;

  WeightSeq() = default;
  WeightSeq(std::string name, LogEval log_m, SeqOptions opts = {});

  static WeightSeq from_table(std::string name, std::vector<double> log_m,
                              bool weight_sequence);

  const std::string& name() const;
  bool is_weight_sequence() const;
  std::optional<std::size_t> limit() const;
  bool has_real_extension() const;
  bool has_analytic_tail() const;
  const std::string& tail_kind() const;

  double log_m(std::size_t k) const;
  double log_m_real(double k) const;
  double log_mu(std::size_t k) const;  // k >= 1
  std::vector<double> log_m_table(std::size_t n) const;  // indices 0..n

  /// Bracket of sum_{l >= k} 1/mu_l, analytic when available, else partial
  /// sums to n_max plus a fitted power-law remainder.
  Interval tail(std::size_t k, std::size_t n_max = kDefaultTailTerms) const;

  WeightSeq renamed(std::string name) const;

  bool valid() const { return static_cast<bool>(state_); }

 private:
  struct State;
  std::shared_ptr<State> state_;
};

double mu(const WeightSeq& seq, std::size_t k);

Verdict is_log_convex(const WeightSeq& seq, std::size_t n);
Verdict is_strongly_log_convex(const WeightSeq& seq, std::size_t n);

/// Throws Error(DivergentTail) when `require_finite` and the bracket is unbounded.
Interval tail_recip_mu(const WeightSeq& seq, std::size_t k,
                       std::size_t n_max = kDefaultTailTerms, bool require_finite = false);

Verdict is_non_quasianalytic(const WeightSeq& seq, std::size_t n_max = kDefaultTailTerms);
Verdict has_moderate_growth(const WeightSeq& seq, std::size_t n, const TrendConfig& cfg = {});
Verdict seq_preceq(const WeightSeq& m, const WeightSeq& n, std::size_t n_terms,
                   const TrendConfig& cfg = {});
Verdict seq_equivalent(const WeightSeq& m, const WeightSeq& n, std::size_t n_terms,
                       const TrendConfig& cfg = {});

/// M^{[n]}_j = M_{nj}^{1/n}. Accepts any positive sequence (the left side of
/// prec_SV need not be log-convex); the weight flag is inherited.
WeightSeq power_shift(const WeightSeq& seq, std::size_t n);

/// Lower convex hull of (k, log M_k) on [0, n + B], B = max(16, n/4),
/// returned on [0, n].
WeightSeq log_convex_minorant(const WeightSeq& seq, std::size_t n);

/// Returns the sequence rescaled to log M_0 = 0 and M_1 >= 1 (geometric
/// factor), with a description of what was changed (empty if nothing).
std::pair<WeightSeq, std::string> normalize_sequence(const WeightSeq& seq);

}  // namespace uw
