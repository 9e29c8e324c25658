#pragma once

#include <cstddef>
#include <vector>

namespace plap {

/// Radial profile sampled on the uniform grid r_i = i*radius/(n-1),
/// i = 0..n-1. The point count is odd so the composite Simpson rule has
/// an even number of panels.
struct RadialFunction {
  double radius = 1.0;
  std::vector<double> values;

  int n_points() const { return static_cast<int>(values.size()); }
  double spacing() const { return radius / (n_points() - 1); }
  double r(int i) const { return i * radius / (n_points() - 1); }
};

/// Uniform Q1 mesh of the unit square with n_cells x n_cells elements.
/// Interior nodes carry unknowns; boundary nodes are fixed to zero.
struct SquareMesh {
  int n_cells = 64;

  double spacing() const { return 1.0 / n_cells; }
  int nodes_per_side() const { return n_cells + 1; }
  int n_nodes() const { return nodes_per_side() * nodes_per_side(); }
  int n_interior() const { return (n_cells - 1) * (n_cells - 1); }
};

/// Nodal values on a SquareMesh, row-major: index = iy*(n+1) + ix,
/// node (ix,iy) at (ix*h, iy*h).
struct GridFunction2D {
  SquareMesh mesh;
  std::vector<double> values;

  explicit GridFunction2D(SquareMesh m = {})
      : mesh(m), values(static_cast<std::size_t>(m.n_nodes()), 0.0) {}
  GridFunction2D(SquareMesh m, std::vector<double> v)
      : mesh(m), values(std::move(v)) {}

  int index(int ix, int iy) const { return iy * mesh.nodes_per_side() + ix; }
  double& at(int ix, int iy) { return values[index(ix, iy)]; }
  double at(int ix, int iy) const { return values[index(ix, iy)]; }
  bool on_boundary(int ix, int iy) const {
    return ix == 0 || iy == 0 || ix == mesh.n_cells || iy == mesh.n_cells;
  }
};

}  // namespace plap
