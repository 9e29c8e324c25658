#include "plap/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plap/cli/run_record.hpp"
#include "plap/driver.hpp"
#include "plap/errors.hpp"
#include "plap/norms.hpp"
#include "plap/oracle1d.hpp"

namespace plap::cli {

namespace {

constexpr double kUnset = -1.0;

struct OutputOptions {
  std::string path;          // empty = stdout
  std::string format = "csv";
  bool timing = false;
};

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--out", out.path, "Output path (default: stdout)");
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_flag("--timing", out.timing,
                "Report wall time (off by default so output is reproducible)");
}

struct ExtraColumns {
  std::string names;  // ",a,b"
  std::vector<std::pair<std::string, double>> values;
};

void emit_record(std::ostream& os, const RunRecord& r, const OutputOptions& out,
                 bool with_header, const ExtraColumns* extra = nullptr) {
  if (out.format == "jsonl") {
    nlohmann::json j = r;
    if (extra)
      for (const auto& [k, v] : extra->values) j[k] = v;
    os << j.dump() << '\n';
    return;
  }
  if (with_header) {
    os << csv_header();
    if (extra) os << extra->names;
    os << '\n';
  }
  os << csv_row(r);
  if (extra)
    for (const auto& [k, v] : extra->values) os << ',' << format_double(v);
  os << '\n';
}

int count_outer_steps(const IterationTrace& trace) {
  int n = 0;
  for (const IterationStep& s : trace.steps)
    if (!std::isnan(s.rel_change)) ++n;
  return n;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void dump_radial_profile(const std::string& path, const RadialFunction& u) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open profile file " + path);
  os << "r,value\n";
  for (int i = 0; i < u.n_points(); ++i)
    os << format_double(u.r(i)) << ',' << format_double(u.values[i]) << '\n';
}

void dump_square_profile(const std::string& path, const GridFunction2D& u) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open profile file " + path);
  os << "x,y,value\n";
  const int n = u.mesh.n_cells;
  const double h = u.mesh.spacing();
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix)
      os << format_double(ix * h) << ',' << format_double(iy * h) << ','
         << format_double(u.at(ix, iy)) << '\n';
}

// first zero of the Bessel function J_0, for the exact disk eigenvalue
double bessel_j0_first_zero() {
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::cyl_bessel_j(0.0, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ----------------------------------------------------------------- ball

struct BallArgs {
  int dimension = 2;
  double radius = 1.0;
  double p = 0.0;
  double q = kUnset;
  double mu = kUnset;
  int grid = 101;
  double tol = 1e-9;
  int max_iters = 500000;
  int algorithm = 1;
  std::string profile;
  OutputOptions out;
};

RunRecord solve_ball(const BallArgs& a, const std::string& geometry_tag,
                     RadialFunction* profile_out) {
  const radial::BallDomain dom{a.dimension, a.radius};
  ProblemParams P;
  P.p = a.p;
  P.q = a.q == kUnset ? a.p - 0.01 : a.q;
  P.outer_tol = a.tol;
  P.max_outer_iters = a.max_iters;
  if (a.algorithm == 1) P.mu = a.mu == kUnset ? radial::kp(dom, a.p) : a.mu;
  radial::SolveOptions opts;
  opts.grid_points = a.grid;

  const auto t0 = std::chrono::steady_clock::now();
  const EigenpairEstimate est = a.algorithm == 1
                                    ? driver::run_algorithm1(dom, P, opts)
                                    : driver::run_algorithm2(dom, P, opts);
  RunRecord r;
  r.geometry = geometry_tag;
  r.dimension = a.dimension;
  r.p = P.p;
  r.q = P.q;
  r.mu = a.algorithm == 1 ? P.mu : 0.0;
  r.eps = 0.0;
  r.mesh = a.grid;
  r.mu_q = est.mu_q;
  r.lambda_upper = est.lambda_upper;
  r.iters = count_outer_steps(est.trace);
  r.seconds = a.out.timing ? seconds_since(t0) : 0.0;
  r.converged = est.trace.converged;
  if (profile_out) *profile_out = std::get<RadialFunction>(est.eigenfunction);
  return r;
}

int cmd_ball(const BallArgs& a) {
  RadialFunction profile;
  const RunRecord r =
      solve_ball(a, "ball", a.profile.empty() ? nullptr : &profile);
  OutputStream os(a.out.path);
  emit_record(os.get(), r, a.out, true);
  if (!a.profile.empty()) dump_radial_profile(a.profile, profile);
  return 0;
}

// --------------------------------------------------------------- square

struct SquareArgs {
  double p = 0.0;
  double q = kUnset;
  int mesh = 64;
  double eps = 1e-5;
  double tol = 1e-9;
  double inner_tol = 1e-8;
  int max_outer = 100000;
  int max_newton = 60;
  bool experimental_q_equals_p = false;
  std::string profile;
  OutputOptions out;
};

RunRecord solve_square(const SquareArgs& a, GridFunction2D* profile_out) {
  const SquareMesh mesh{a.mesh};
  ProblemParams P;
  P.p = a.p;
  P.q = a.q == kUnset ? a.p - 0.01 : a.q;
  P.epsilon = a.eps;
  P.outer_tol = a.tol;
  P.inner_rel_tol = a.inner_tol;
  P.max_outer_iters = a.max_outer;
  P.max_newton_iters = a.max_newton;
  P.allow_q_equal_p = a.experimental_q_equals_p;

  const auto t0 = std::chrono::steady_clock::now();
  const EigenpairEstimate est = driver::run_algorithm2(mesh, P);
  RunRecord r;
  r.geometry = "square";
  r.dimension = 2;
  r.p = P.p;
  r.q = P.q;
  r.mu = 0.0;
  r.eps = a.eps;
  r.mesh = a.mesh;
  r.mu_q = est.mu_q;
  r.lambda_upper = est.lambda_upper;
  r.iters = count_outer_steps(est.trace);
  r.seconds = a.out.timing ? seconds_since(t0) : 0.0;
  r.converged = est.trace.converged;
  if (profile_out) *profile_out = std::get<GridFunction2D>(est.eigenfunction);
  return r;
}

int cmd_square(const SquareArgs& a) {
  if (a.mesh < 8)
    std::cerr << "warning: coarse mesh (" << a.mesh
              << " cells per side); expect large discretization error\n";
  GridFunction2D profile;
  const RunRecord r = solve_square(a, a.profile.empty() ? nullptr : &profile);
  OutputStream os(a.out.path);
  emit_record(os.get(), r, a.out, true);
  if (!a.profile.empty()) dump_square_profile(a.profile, profile);
  return 0;
}

// ------------------------------------------------------- sweep / study

struct GeoArgs {
  std::string geometry;
  int dimension = 2;
  double radius = kUnset;
  int grid = 101;
  int mesh = 64;
  double eps = 1e-5;

  bool is_radial() const { return geometry != "square"; }
  double effective_radius() const {
    if (radius != kUnset) return radius;
    return geometry == "interval" ? 0.5 : 1.0;  // interval = unit length
  }
  int effective_dimension() const {
    return geometry == "interval" ? 1 : dimension;
  }
};

struct SweepArgs {
  GeoArgs geo;
  double p_from = 0.0, p_to = 0.0, step = 0.1;
  bool oracle = false;
  OutputOptions out;
};

int cmd_sweep(const SweepArgs& a) {
  if (!(a.p_from > 1.0) || !(a.step > 0.0) || a.p_to < a.p_from)
    throw std::invalid_argument(
        "sweep: need 1 < p-from <= p-to and a positive step");
  if (a.oracle && !(a.geo.is_radial() && a.geo.effective_dimension() == 1))
    throw std::invalid_argument(
        "sweep: --oracle needs the interval geometry (or ball with -N 1)");

  std::vector<double> ps;
  for (double p = a.p_from; p <= a.p_to + 0.5 * a.step; p += a.step)
    ps.push_back(p);

  OutputStream os(a.out.path);
  bool any_failed = false;
  bool first = true;
  for (double p : ps) {
    RunRecord r;
    try {
      if (a.geo.is_radial()) {
        BallArgs ball;
        ball.dimension = a.geo.effective_dimension();
        ball.radius = a.geo.effective_radius();
        ball.p = p;
        ball.grid = a.geo.grid;
        ball.out = a.out;
        r = solve_ball(ball, a.geo.geometry, nullptr);
      } else {
        SquareArgs sq;
        sq.p = p;
        sq.mesh = a.geo.mesh;
        sq.eps = a.geo.eps;
        sq.out = a.out;
        r = solve_square(sq, nullptr);
      }
    } catch (const SolverError& err) {
      std::cerr << "sweep: p = " << p << " failed: " << err.what() << '\n';
      any_failed = true;
      r.geometry = a.geo.geometry;
      r.dimension = a.geo.effective_dimension();
      r.p = p;
      r.mesh = a.geo.is_radial() ? a.geo.grid : a.geo.mesh;
      r.converged = false;
    }
    if (a.oracle) {
      const double R = a.geo.effective_radius();
      const double exact = oracle1d::lambda_1d(p, {-R, R});
      ExtraColumns extra{",oracle_lambda,abs_error",
                         {{"oracle_lambda", exact},
                          {"abs_error", std::abs(r.mu_q - exact)}}};
      emit_record(os.get(), r, a.out, first, &extra);
    } else {
      emit_record(os.get(), r, a.out, first);
    }
    first = false;
  }
  return any_failed ? 3 : 0;
}

struct StudyArgs {
  GeoArgs geo;
  double p = 0.0;
  std::string gaps_csv;
  std::string reference = "auto";
  double tol = 1e-9;
  OutputOptions out;
};

std::vector<double> parse_gaps(const std::string& csv) {
  std::vector<double> gaps;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad gap value " + item);
    gaps.push_back(v);
  }
  if (gaps.empty()) throw std::invalid_argument("study: no gaps given");
  return gaps;
}

std::optional<double> resolve_reference(const StudyArgs& a) {
  if (a.reference == "auto") return std::nullopt;
  if (a.reference != "exact") {
    std::size_t pos = 0;
    const double v = std::stod(a.reference, &pos);
    if (pos != a.reference.size())
      throw std::invalid_argument("study: --reference must be auto, exact or a number");
    return v;
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  if (a.geo.is_radial()) {
    const double R = a.geo.effective_radius();
    const int N = a.geo.effective_dimension();
    if (N == 1) return oracle1d::lambda_1d(a.p, {-R, R});
    if (a.p == 2.0 && N == 2) {
      const double j01 = bessel_j0_first_zero();
      return j01 * j01 / (R * R);
    }
    if (a.p == 2.0 && N == 3) return pi2 / (R * R);
  } else if (a.p == 2.0) {
    return 2.0 * pi2;
  }
  throw std::invalid_argument(
      "study: no exact reference for this geometry/p; use auto or a number");
}

int cmd_study(const StudyArgs& a) {
  const std::vector<double> gaps = parse_gaps(a.gaps_csv);
  const std::optional<double> reference = resolve_reference(a);

  ProblemParams base;
  base.outer_tol = a.tol;
  driver::ConvergenceStudy study;
  if (a.geo.is_radial()) {
    const radial::BallDomain dom{a.geo.effective_dimension(),
                                 a.geo.effective_radius()};
    radial::SolveOptions opts;
    opts.grid_points = a.geo.grid;
    study = driver::q_to_p_study(dom, a.p, gaps, reference, base, opts);
  } else {
    base.epsilon = a.geo.eps;
    study = driver::q_to_p_study(SquareMesh{a.geo.mesh}, a.p, gaps, reference,
                                 base);
  }

  OutputStream stream(a.out.path);
  std::ostream& os = stream.get();
  if (a.out.format == "jsonl") {
    for (const driver::StudyRow& row : study.rows) {
      nlohmann::json j{{"gap", row.gap},
                       {"lambda", row.lambda},
                       {"is_reference", row.is_reference}};
      if (!row.is_reference) j["error"] = row.error;
      os << j.dump() << '\n';
    }
    nlohmann::json summary{{"reference", study.reference_lambda},
                           {"reference_is_exact", study.reference_is_exact},
                           {"K", study.k_estimate}};
    if (study.slope) summary["slope"] = *study.slope;
    os << summary.dump() << '\n';
  } else {
    os << "gap,lambda,error,is_reference\n";
    for (const driver::StudyRow& row : study.rows) {
      os << format_double(row.gap) << ',' << format_double(row.lambda) << ','
         << (row.is_reference ? "" : format_double(row.error)) << ','
         << (row.is_reference ? "1" : "0") << '\n';
    }
    os << "# reference = " << format_double(study.reference_lambda)
       << (study.reference_is_exact ? " (exact)" : " (smallest-gap run)")
       << '\n';
    if (study.slope) os << "# slope = " << format_double(*study.slope) << '\n';
    os << "# K = " << format_double(study.k_estimate) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ assembly

void add_geometry_flags(CLI::App* cmd, GeoArgs& geo) {
  cmd->add_option("geometry", geo.geometry, "ball | interval | square")
      ->required()
      ->check(CLI::IsMember({"ball", "interval", "square"}));
  cmd->add_option("-N,--dim", geo.dimension, "Ball dimension")->check(CLI::PositiveNumber);
  cmd->add_option("-R,--radius", geo.radius, "Ball radius (interval: half-length)");
  cmd->add_option("--grid", geo.grid, "Radial grid points (odd)");
  cmd->add_option("--mesh", geo.mesh, "Square mesh cells per side");
  cmd->add_option("--eps", geo.eps, "Flux regularization (square)");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "First Dirichlet eigenpair of the p-Laplacian by inverse iteration "
      "of sublinear supersolutions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value options file");

  BallArgs ball;
  CLI::App* cmd_ball_p = app.add_subcommand(
      "ball", "Solve on an N-dimensional ball (radial quadrature backend)");
  cmd_ball_p->add_option("-N,--dim", ball.dimension, "Dimension (1 = symmetric interval)")
      ->check(CLI::PositiveNumber);
  cmd_ball_p->add_option("-R,--radius", ball.radius, "Radius")->check(CLI::PositiveNumber);
  cmd_ball_p->add_option("-p", ball.p, "Exponent p > 1")->required();
  cmd_ball_p->add_option("-q", ball.q, "Sublinear exponent (default p - 0.01)");
  cmd_ball_p->add_option("--mu", ball.mu, "Source scale (default k_p)");
  cmd_ball_p->add_option("--grid", ball.grid, "Grid points (odd)");
  cmd_ball_p->add_option("--tol", ball.tol, "Outer relative tolerance");
  cmd_ball_p->add_option("--max-iters", ball.max_iters, "Outer iteration cap");
  cmd_ball_p->add_option("--algorithm", ball.algorithm, "1 = with mu, 2 = normalized")
      ->check(CLI::IsMember({1, 2}));
  cmd_ball_p->add_option("--profile", ball.profile, "Dump eigenfunction CSV (r,value)");
  add_output_flags(cmd_ball_p, ball.out);

  SquareArgs square;
  CLI::App* cmd_square_p = app.add_subcommand(
      "square", "Solve on the unit square (Q1 finite element backend)");
  cmd_square_p->add_option("-p", square.p, "Exponent p > 1")->required();
  cmd_square_p->add_option("-q", square.q, "Sublinear exponent (default p - 0.01)");
  cmd_square_p->add_option("--mesh", square.mesh, "Cells per side")
      ->check(CLI::Range(2, 1024));
  cmd_square_p->add_option("--eps", square.eps, "Flux regularization");
  cmd_square_p->add_option("--tol", square.tol, "Outer relative tolerance");
  cmd_square_p->add_option("--inner-tol", square.inner_tol, "Newton relative tolerance");
  cmd_square_p->add_option("--max-outer", square.max_outer, "Outer iteration cap");
  cmd_square_p->add_option("--max-newton", square.max_newton, "Newton iteration cap");
  cmd_square_p->add_flag("--experimental-q-equals-p", square.experimental_q_equals_p,
                         "Permit q = p (no convergence guarantee)");
  cmd_square_p->add_option("--profile", square.profile, "Dump eigenfunction CSV (x,y,value)");
  add_output_flags(cmd_square_p, square.out);

  SweepArgs sweep;
  CLI::App* cmd_sweep_p =
      app.add_subcommand("sweep", "One run per p over a range");
  add_geometry_flags(cmd_sweep_p, sweep.geo);
  cmd_sweep_p->add_option("--p-from", sweep.p_from, "First p")->required();
  cmd_sweep_p->add_option("--p-to", sweep.p_to, "Last p")->required();
  cmd_sweep_p->add_option("--step", sweep.step, "p increment");
  cmd_sweep_p->add_flag("--oracle", sweep.oracle,
                        "Append exact 1D eigenvalue and error columns");
  add_output_flags(cmd_sweep_p, sweep.out);

  StudyArgs study;
  CLI::App* cmd_study_p = app.add_subcommand(
      "study", "q -> p convergence study over a list of p - q gaps");
  add_geometry_flags(cmd_study_p, study.geo);
  cmd_study_p->add_option("-p", study.p, "Exponent p > 1")->required();
  cmd_study_p->add_option("--gaps", study.gaps_csv, "Comma-separated decreasing gaps")
      ->required();
  cmd_study_p->add_option("--reference", study.reference,
                          "auto | exact | <number> (default auto)");
  cmd_study_p->add_option("--tol", study.tol, "Outer relative tolerance");
  add_output_flags(cmd_study_p, study.out);

  try {
    app.parse(argc, argv);
    if (*cmd_ball_p) return cmd_ball(ball);
    if (*cmd_square_p) return cmd_square(square);
    if (*cmd_sweep_p) return cmd_sweep(sweep);
    if (*cmd_study_p) return cmd_study(study);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace plap::cli
