#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace plap::cli {

/// One solver run in the machine-readable outputs. `mesh` is grid
/// points (radial) or cells per side (square); `mu` is 0 for normalized
/// (algorithm 2) runs, which take no mu parameter; `seconds` is 0
/// unless timing was requested, keeping default output reproducible.
struct RunRecord {
  std::string geometry;  // ball | interval | square
  int dimension = 0;
  double p = 0.0;
  double q = 0.0;
  double mu = 0.0;
  double eps = 0.0;
  int mesh = 0;
  double mu_q = 0.0;
  double lambda_upper = 0.0;
  int iters = 0;
  double seconds = 0.0;
  bool converged = false;

  bool operator==(const RunRecord&) const = default;
};

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

/// 15-significant-digit decimal, locale-independent.
std::string format_double(double v);

std::string csv_header();
std::string csv_row(const RunRecord& r);

}  // namespace plap::cli
