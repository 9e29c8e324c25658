#include "plap/norms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plap {

namespace {

// Surface measure of the unit sphere S^{N-1}; 2 at N = 1 (two points).
double sphere_measure(int dimension) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dimension) /
         std::tgamma(0.5 * dimension);
}

// Composite Simpson on a uniform grid with an odd point count.
double simpson(const std::vector<double>& g, double h) {
  const int n = static_cast<int>(g.size());
  double sum = g.front() + g.back();
  for (int i = 1; i < n - 1; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * g[i];
  return sum * h / 3.0;
}

}  // namespace

double sup_norm(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const RadialFunction& f) { return sup_norm(std::span(f.values)); }

double sup_norm(const GridFunction2D& f) { return sup_norm(std::span(f.values)); }

double lp_norm(const RadialFunction& f, double r, int dimension) {
  if (r < 1.0) throw std::invalid_argument("lp_norm: exponent must be >= 1");
  const int n = f.n_points();
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("lp_norm: radial grid must be odd, >= 3 points");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    const double s = f.r(i);
    const double w = dimension == 1 ? 1.0 : std::pow(s, dimension - 1);
    g[i] = std::pow(std::abs(f.values[i]), r) * w;
  }
  const double integral = sphere_measure(dimension) * simpson(g, f.spacing());
  return std::pow(integral, 1.0 / r);
}

double lp_norm(const GridFunction2D& f, double r) {
  if (r < 1.0) throw std::invalid_argument("lp_norm: exponent must be >= 1");
  const int n = f.mesh.n_cells;
  const double cell = f.mesh.spacing() * f.mesh.spacing();
  double integral = 0.0;
  for (int iy = 0; iy <= n; ++iy) {
    for (int ix = 0; ix <= n; ++ix) {
      // weight = h^2 * (cells sharing the node)/4
      const int cx = (ix == 0 || ix == n) ? 1 : 2;
      const int cy = (iy == 0 || iy == n) ? 1 : 2;
      integral += cell * (cx * cy / 4.0) * std::pow(std::abs(f.at(ix, iy)), r);
    }
  }
  return std::pow(integral, 1.0 / r);
}

}  // namespace plap
