#pragma once

#include <span>

#include "plap/fields.hpp"

namespace plap {

double sup_norm(std::span<const double> values);
double sup_norm(const RadialFunction& f);
double sup_norm(const GridFunction2D& f);

/// L^r norm of a radial profile over the dimension-N ball of radius
/// f.radius, i.e. (omega_{N-1} * int_0^R |f|^r s^{N-1} ds)^{1/r}.
///
/// N = 1 stands for the symmetric interval (-R, R) represented by its
/// half [0, R]; the sphere measure omega_0 = 2 supplies the doubling.
/// The integral uses the same composite Simpson rule as the radial
/// solver so eigenvalue quotients are consistent with the iterates.
double lp_norm(const RadialFunction& f, double r, int dimension);

/// L^r norm over the unit square by nodal quadrature (weight h^2 per
/// interior node, scaled down on edges/corners by shared-cell count).
double lp_norm(const GridFunction2D& f, double r);

}  // namespace plap
