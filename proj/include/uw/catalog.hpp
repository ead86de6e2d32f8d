#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "uw/func.hpp"
#include "uw/seq.hpp"

namespace uw {

/// Gevrey sequence M_k = (k!)^s, s > 1. Tail: partial sums to 10^4 plus the
/// integral-test bracket.
WeightSeq make_gevrey(double s);
/// M_k = k!; quasianalytic, the tail bracket is unbounded.
WeightSeq make_factorial();
/// M_k = q^{k^2}, q > 1; geometric tail.
WeightSeq make_qgevrey(double q);

/// omega(t) = t^beta, beta in (0, 1).
WeightFn make_power_weight(double beta);
/// omega(t) = max(0, log t)^2.
WeightFn make_log_square_weight();
/// omega(t) = t (quasianalytic).
WeightFn make_linear_weight();

/// alpha in {2^-3, ..., 2^3}.
std::vector<double> default_matrix_grid();

struct CatalogEntry {
  std::string kind;  // sequence, function, matrix
  std::string uri;
  std::string parameters;
  std::string description;
};

std::vector<CatalogEntry> catalog_list();

struct ParsedUri {
  std::string scheme;  // seq, fn, mat, derived, csv
  std::string name;
  std::map<std::string, std::string> params;
  std::string inner;  // derived:X(inner)
};

ParsedUri parse_uri(const std::string& uri);

/// Sequences: seq:..., csv:<path>, derived:X(<sequence uri>). Derived
/// sequences are computed to n.
WeightSeq resolve_seq(const std::string& uri, std::size_t n = 256);
WeightFn resolve_fn(const std::string& uri);
/// Matrices: mat:omega?fn=..., mat:const?seq=..., or any sequence URI as a
/// single-member matrix.
WeightMatrix resolve_matrix(const std::string& uri, std::vector<double> grid = {});

}  // namespace uw
