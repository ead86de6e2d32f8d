#include "uw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uw/errors.hpp"

namespace uw {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const Verdict& v) {
  json j;
  j["relation"] = v.relation;
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["status"] = to_string(v.status);
  j["witness"] = std::isfinite(v.witness) ? json(v.witness) : json(nullptr);
  json pairs = json::array();
  for (const auto& p : v.pairing) {
    pairs.push_back({{"alpha", p.alpha},
                     {"beta", p.beta ? json(*p.beta) : json(nullptr)},
                     {"status", to_string(p.status)}});
  }
  j["pairing"] = pairs;
  j["grid"] = v.grid;
  json traj = json::array();
  for (const auto& [x, y] : v.trajectory)
    traj.push_back({x, std::isfinite(y) ? json(y) : json(format_number(y))});
  j["trajectory_sample"] = traj;
  j["note"] = v.note;
  return j;
}

json to_json(const TrendConfig& cfg) {
  return {{"slack", cfg.slack}, {"fail_slope", cfg.fail_slope}, {"contraction", cfg.contraction}};
}

json sequence_json(const WeightSeq& seq, std::size_t n) {
  return {{"name", seq.name()},
          {"n", n},
          {"log_m", seq.log_m_table(n)},
          {"tail_kind", seq.tail_kind()}};
}

std::string sequence_csv(const WeightSeq& seq, std::size_t n) {
  std::ostringstream os;
  os << "k,log_m,mu\n";
  const auto lm = seq.log_m_table(n);
  for (std::size_t k = 0; k <= n; ++k) {
    os << k << "," << format_number(lm[k]) << ",";
    if (k > 0) os << format_number(std::exp(lm[k] - lm[k - 1]));
    os << "\n";
  }
  return os.str();
}

std::string function_csv(const WeightFn& w, const std::vector<double>& t_grid) {
  std::ostringstream os;
  os << "t,omega,kappa,poisson\n";
  for (double t : t_grid) {
    os << format_number(t) << "," << format_number(w(t)) << ",";
    try {
      os << format_number(kappa(w, t).value);
    } catch (const Error&) {
    }
    os << ",";
    try {
      os << format_number(poisson_imag(w, t).value);
    } catch (const Error&) {
    }
    os << "\n";
  }
  return os.str();
}

json matrix_json(const WeightMatrix& mat, std::size_t n) {
  json members = json::array();
  for (double a : mat.grid()) {
    json m = sequence_json(mat.member(a), n);
    m["alpha"] = a;
    members.push_back(std::move(m));
  }
  json j = {{"name", mat.name()}, {"grid", mat.grid()}, {"members", members}};
  const auto warnings = mat.warnings();
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

WeightSeq read_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::InvalidArgument, path + ": empty file");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == "log_m") col = i;
  if (col == header.size()) throw Error(ErrorKind::InvalidArgument, path + ": no log_m column");
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t i = 0; i <= col && std::getline(ss, cell, ','); ++i) {
    }
    try {
      vals.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, path + ": bad value '" + cell + "'");
    }
  }
  if (vals.size() < 2) throw Error(ErrorKind::InvalidArgument, path + ": fewer than two rows");
  bool convex = true;
  for (std::size_t k = 1; k + 1 < vals.size(); ++k)
    if (vals[k + 1] - vals[k] < vals[k] - vals[k - 1] - kLogTol) convex = false;
  return WeightSeq::from_table("csv:" + path, std::move(vals), convex);
}

}  // namespace uw
