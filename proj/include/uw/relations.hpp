#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "uw/func.hpp"
#include "uw/seq.hpp"
#include "uw/verdict.hpp"

namespace uw {

std::vector<double> default_s_grid();  // 1, 2, 4, ..., 1024

/// M' prec_SV M: boundedness of
/// F_s(j) = sup_{i<j} (M'_j / (s^j M_i))^{1/(j-i)} / j * T_j for some s.
Verdict prec_SV(const WeightSeq& mp, const WeightSeq& m, std::size_t n,
                const std::vector<double>& s_grid = default_s_grid(), const TrendConfig& cfg = {});

/// Boundedness of (mu'_j / j) * T_j.
Verdict prec_gamma1(const WeightSeq& mp, const WeightSeq& m, std::size_t n,
                    const TrendConfig& cfg = {});

/// Verdict-level implication. Holds when respected or vacuous, Fails when
/// violated, Inconclusive (reported as skipped) otherwise.
Verdict implication(std::string name, const Verdict& antecedent, const Verdict& consequent);

Verdict gamma1_implies_SV_check(const WeightSeq& mp, const WeightSeq& m, std::size_t n);

/// liminf (mu_j / j) sum_{k >= 2j} 1/mu_k > 0.
Verdict cond_Mmg(const WeightSeq& m, std::size_t n, const TrendConfig& cfg = {});

using SeqRelation = std::function<Verdict(const WeightSeq&, const WeightSeq&)>;

/// For every alpha in a.grid searches beta in b.grid (ascending) with
/// rel(A^(alpha), B^(beta)) = Holds and records the pairing.
Verdict matrix_braces(const WeightMatrix& a, const WeightMatrix& b, std::string relation,
                      const SeqRelation& rel);

Verdict matrix_braces_preceq(const WeightMatrix& a, const WeightMatrix& b, std::size_t n,
                             const TrendConfig& cfg = {});
Verdict matrix_braces_equivalent(const WeightMatrix& a, const WeightMatrix& b, std::size_t n,
                                 const TrendConfig& cfg = {});

Verdict r_moderate_growth(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg = {});

Verdict cond_liminf(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg = {});
Verdict cond_liminf2(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg = {});
/// `s_family` holds S-sequences; sigma is read off as their quotients.
Verdict cond_roquS(const WeightMatrix& s_family, std::size_t n, const TrendConfig& cfg = {});
Verdict cond_invmg(const WeightMatrix& mat, std::size_t n, const TrendConfig& cfg = {});

/// log_a[k] = log|a_k|, k = 0..n.
Verdict lambda_membership(const std::vector<double>& log_a, const WeightSeq& m, std::size_t n,
                          const TrendConfig& cfg = {});
Verdict lambda_membership(const std::vector<double>& log_a, const WeightMatrix& mat,
                          std::size_t n, const TrendConfig& cfg = {});

}  // namespace uw
