#pragma once

#include <vector>

#include "histop/linalg.hpp"

namespace histop {

using Point = std::vector<double>;

/// Nondegenerate d-simplex, possibly embedded in a higher-dimensional
/// ambient space (faces of a tetrahedron live in R^3 with intrinsic
/// dimension 2). Immutable value type.
class Simplex {
public:
    /// vertices.size() == dim + 1, each vertex of equal ambient dimension
    /// >= dim. Rejects simplices with volume < 1e-12 * (max edge)^dim.
    Simplex(int dim, std::vector<Point> vertices);

    /// Unit reference simplex in R^d: v0 = 0, v_i = e_i.
    static Simplex reference(int dim);

    int dim() const { return dim_; }
    int ambient_dim() const { return ambient_; }
    const Point& vertex(int i) const { return vertices_[i]; }
    const std::vector<Point>& vertices() const { return vertices_; }

    /// |det[v_1-v_0,...,v_d-v_0]| / d!  (Gram determinant when embedded).
    double volume() const { return volume_; }

    double max_edge_length() const;

    /// Face opposite vertex j: the (d-1)-simplex on {v_i : i != j},
    /// vertex order = increasing parent index i.
    Simplex face(int j) const;

    /// Barycentric coordinates of x with respect to this simplex.
    /// For embedded simplices, x is first projected onto the affine hull.
    Vec barycentric_coords(const Point& x) const;

    /// Cartesian point sum_i lambda_i v_i.
    Point point_from_barycentric(const Vec& lambda) const;

private:
    int dim_;
    int ambient_;
    std::vector<Point> vertices_;
    double volume_;
};

/// x -> matrix * x + offset on R^d.
struct AffineMap {
    Mat matrix;
    Point offset;

    Point apply(const Point& x) const;
};

/// The affine bijection taking src vertices to dst vertices in order.
/// Both simplices must be full-dimensional in the same R^d.
AffineMap affine_map_between(const Simplex& src, const Simplex& dst);

} // namespace histop
