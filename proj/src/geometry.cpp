#include "histop/geometry.hpp"

#include <cmath>

namespace histop {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Columns are the edge vectors v_i - v_0, i = 1..d.
Mat edge_matrix(const std::vector<Point>& vertices, int ambient, int dim) {
    Mat e(ambient, dim);
    for (int j = 1; j <= dim; ++j)
        for (int i = 0; i < ambient; ++i) e(i, j - 1) = vertices[j][i] - vertices[0][i];
    return e;
}

} // namespace

Simplex::Simplex(int dim, std::vector<Point> vertices)
    : dim_(dim), vertices_(std::move(vertices)) {
    if (dim_ < 1 || static_cast<int>(vertices_.size()) != dim_ + 1)
        throw GeometryError("Simplex: need dim+1 vertices, dim >= 1");
    ambient_ = static_cast<int>(vertices_[0].size());
    if (ambient_ < dim_) throw GeometryError("Simplex: ambient dimension below intrinsic");
    for (const Point& v : vertices_)
        if (static_cast<int>(v.size()) != ambient_)
            throw GeometryError("Simplex: inconsistent vertex dimensions");

    const Mat e = edge_matrix(vertices_, ambient_, dim_);
    const double gram_det = determinant(e.transposed() * e);
    volume_ = std::sqrt(std::max(gram_det, 0.0)) / factorial(dim_);

    const double edge = max_edge_length();
    if (!(volume_ > 1e-12 * std::pow(edge, dim_)))
        throw GeometryError("Simplex: degenerate (volume below scale-aware tolerance)");
}

Simplex Simplex::reference(int dim) {
    std::vector<Point> v(dim + 1, Point(dim, 0.0));
    for (int i = 1; i <= dim; ++i) v[i][i - 1] = 1.0;
    return Simplex(dim, std::move(v));
}

double Simplex::max_edge_length() const {
    double best = 0.0;
    for (size_t i = 0; i < vertices_.size(); ++i)
        for (size_t j = i + 1; j < vertices_.size(); ++j) {
            double s = 0.0;
            for (int k = 0; k < ambient_; ++k) {
                const double d = vertices_[i][k] - vertices_[j][k];
                s += d * d;
            }
            best = std::max(best, std::sqrt(s));
        }
    return best;
}

Simplex Simplex::face(int j) const {
    if (j < 0 || j > dim_) throw GeometryError("Simplex::face: index out of range");
    std::vector<Point> fv;
    fv.reserve(dim_);
    for (int i = 0; i <= dim_; ++i)
        if (i != j) fv.push_back(vertices_[i]);
    return Simplex(dim_ - 1, std::move(fv));
}

Vec Simplex::barycentric_coords(const Point& x) const {
    if (static_cast<int>(x.size()) != ambient_)
        throw GeometryError("barycentric_coords: point dimension mismatch");
    // Solve E^T E c = E^T (x - v0); lambda_0 = 1 - sum(c). For a
    // full-dimensional simplex this is the exact (d+1)x(d+1) system in
    // normal-equation form; for embedded simplices it projects onto the
    // affine hull.
    const Mat e = edge_matrix(vertices_, ambient_, dim_);
    Vec rhs(dim_, 0.0);
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < ambient_; ++i) rhs[j] += e(i, j) * (x[i] - vertices_[0][i]);
    Vec c;
    try {
        c = lu_solve(e.transposed() * e, rhs);
    } catch (const NumericalError&) {
        throw GeometryError("barycentric_coords: degenerate simplex");
    }
    Vec lambda(dim_ + 1);
    double sum = 0.0;
    for (int i = 0; i < dim_; ++i) sum += c[i];
    lambda[0] = 1.0 - sum;
    for (int i = 0; i < dim_; ++i) lambda[i + 1] = c[i];
    return lambda;
}

Point Simplex::point_from_barycentric(const Vec& lambda) const {
    if (static_cast<int>(lambda.size()) != dim_ + 1)
        throw GeometryError("point_from_barycentric: arity mismatch");
    Point x(ambient_, 0.0);
    for (int i = 0; i <= dim_; ++i)
        for (int k = 0; k < ambient_; ++k) x[k] += lambda[i] * vertices_[i][k];
    return x;
}

Point AffineMap::apply(const Point& x) const {
    Point y = offset;
    for (int i = 0; i < matrix.rows(); ++i)
        for (int j = 0; j < matrix.cols(); ++j) y[i] += matrix(i, j) * x[j];
    return y;
}

AffineMap affine_map_between(const Simplex& src, const Simplex& dst) {
    if (src.dim() != dst.dim()) throw GeometryError("affine_map_between: dimension mismatch");
    if (src.dim() != src.ambient_dim() || dst.dim() != dst.ambient_dim())
        throw GeometryError("affine_map_between: simplices must be full-dimensional");
    const int d = src.dim();
    const Mat es = edge_matrix(src.vertices(), d, d);
    const Mat ed = edge_matrix(dst.vertices(), d, d);
    Mat b;
    try {
        b = ed * inverse(es);
    } catch (const NumericalError&) {
        throw GeometryError("affine_map_between: degenerate source simplex");
    }
    const double det = determinant(b);
    const double scale = frobenius_norm(b) / std::sqrt(static_cast<double>(d));
    if (std::abs(det) <= 1e-12 * std::pow(scale, d))
        throw GeometryError("affine_map_between: map numerically singular");
    Point offset(d, 0.0);
    for (int i = 0; i < d; ++i) {
        offset[i] = dst.vertex(0)[i];
        for (int j = 0; j < d; ++j) offset[i] -= b(i, j) * src.vertex(0)[j];
    }
    return AffineMap{std::move(b), std::move(offset)};
}

} // namespace histop
