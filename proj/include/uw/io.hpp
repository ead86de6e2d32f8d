#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "uw/func.hpp"
#include "uw/seq.hpp"
#include "uw/verdict.hpp"

namespace uw {

using nlohmann::json;

json to_json(const Verdict& v);
json to_json(const TrendConfig& cfg);

/// {name, n, log_m, tail_kind}
json sequence_json(const WeightSeq& seq, std::size_t n);
/// header k,log_m,mu
std::string sequence_csv(const WeightSeq& seq, std::size_t n);

/// header t,omega,kappa,poisson; transform columns are empty when refused.
std::string function_csv(const WeightFn& w, const std::vector<double>& t_grid);

/// {name, grid, members: [sequence json]}
json matrix_json(const WeightMatrix& mat, std::size_t n);

/// Columns k,log_m (header required). Declared a weight sequence when the
/// table is log-convex with increasing quotients.
WeightSeq read_sequence_csv(const std::string& path);

/// Shortest round-trip representation.
std::string format_number(double v);

}  // namespace uw
