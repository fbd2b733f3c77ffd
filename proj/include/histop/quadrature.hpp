#pragma once

#include <utility>
#include <vector>

#include "histop/geometry.hpp"
#include "histop/linalg.hpp"

namespace histop {

/// Nodes and weights for int_0^1 f(u) (1-u)^a u^b du, exact for
/// polynomials of degree <= 2*npts - 1. Computed by Golub-Welsch on the
/// Jacobi recurrence.
struct GaussRule1D {
    Vec nodes;
    Vec weights;
};

GaussRule1D gauss_jacobi_01(int npts, double a, double b = 0.0);

/// Quadrature rule on a reference d-simplex in barycentric form; weights
/// sum to 1 (normalized uniform measure). Built from a Duffy-collapsed
/// tensor product where each axis uses the Gauss-Jacobi rule absorbing
/// its Jacobian power, so total degree <= 2*npts - 1 is exact.
struct BaryQuadRule {
    std::vector<Vec> points; // barycentric, size d+1 each
    Vec weights;             // sum to 1
};

BaryQuadRule simplex_rule_barycentric(int dim, int npts);

/// Rule mapped to a concrete (possibly embedded) simplex; weights sum to
/// volume(s).
struct QuadRule {
    std::vector<Point> points;
    Vec weights;
};

QuadRule quad_rule_simplex(const Simplex& s, int npts);

} // namespace histop
