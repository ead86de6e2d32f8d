#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uw/func.hpp"
#include "uw/io.hpp"
#include "uw/verdict.hpp"

namespace uw {

struct HarnessConfig {
  std::size_t n = 256;
  std::vector<double> grid;  // empty: dyadic 2^-3..2^3
  TrendConfig trend;
  unsigned threads = 0;      // 0: hardware concurrency
  std::string source;        // config file, if any

  std::vector<double> resolved_grid() const;
  unsigned resolved_threads() const;
};

json to_json(const HarnessConfig& cfg);

struct Link {
  std::string name;
  std::string paper_ref;
  Verdict verdict;
};

struct Report {
  HarnessConfig config;
  std::vector<Link> links;

  Status summary() const;
  json to_json() const;
};

/// Exit code as a function of the aggregate status: 0 Holds, 1 Fails,
/// 3 Inconclusive.
int exit_code(Status s);

/// Derives S, K, Q, L and underline L from `mat` and checks every inclusion of
/// the chain S <= K = Q <= underline L <= L. When `omega` is given (mat is its
/// associated matrix) the equalities with the kappa matrix and
/// underline L <= K are checked as well.
Report verify_chain(const WeightMatrix& mat, const std::optional<WeightFn>& omega,
                    const HarnessConfig& cfg);
Report verify_chain(const std::string& matrix_uri, const HarnessConfig& cfg);

/// Fast property battery over the catalog.
Report selftest(const HarnessConfig& cfg);

}  // namespace uw
