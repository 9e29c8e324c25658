#include "plap/cli/run_record.hpp"

#include <cstdio>

namespace plap::cli {

void to_json(nlohmann::json& j, const RunRecord& r) {
  j = nlohmann::json{{"geometry", r.geometry},
                     {"N", r.dimension},
                     {"p", r.p},
                     {"q", r.q},
                     {"mu", r.mu},
                     {"eps", r.eps},
                     {"mesh", r.mesh},
                     {"mu_q", r.mu_q},
                     {"lambda_upper", r.lambda_upper},
                     {"iters", r.iters},
                     {"seconds", r.seconds},
                     {"converged", r.converged}};
}

void from_json(const nlohmann::json& j, RunRecord& r) {
  j.at("geometry").get_to(r.geometry);
  j.at("N").get_to(r.dimension);
  j.at("p").get_to(r.p);
  j.at("q").get_to(r.q);
  j.at("mu").get_to(r.mu);
  j.at("eps").get_to(r.eps);
  j.at("mesh").get_to(r.mesh);
  j.at("mu_q").get_to(r.mu_q);
  j.at("lambda_upper").get_to(r.lambda_upper);
  j.at("iters").get_to(r.iters);
  j.at("seconds").get_to(r.seconds);
  j.at("converged").get_to(r.converged);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string csv_header() {
  return "geometry,N,p,q,mu,eps,mesh,mu_q,lambda_upper,iters,seconds,converged";
}

std::string csv_row(const RunRecord& r) {
  std::string row = r.geometry;
  row += ',' + std::to_string(r.dimension);
  row += ',' + format_double(r.p);
  row += ',' + format_double(r.q);
  row += ',' + format_double(r.mu);
  row += ',' + format_double(r.eps);
  row += ',' + std::to_string(r.mesh);
  row += ',' + format_double(r.mu_q);
  row += ',' + format_double(r.lambda_upper);
  row += ',' + std::to_string(r.iters);
  row += ',' + format_double(r.seconds);
  row += ',' + std::string(r.converged ? "1" : "0");
  return row;
}

}  // namespace plap::cli
