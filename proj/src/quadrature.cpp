#include "histop/quadrature.hpp"

#include <cmath>

namespace histop {

namespace {

// Symmetric tridiagonal Jacobi matrix for the monic orthogonal
// polynomials of weight (1-x)^a (1+x)^b on [-1,1].
GaussRule1D golub_welsch(int n, double a, double b) {
    Mat j(n, n);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        double diag;
        if (k == 0)
            diag = (b - a) / (a + b + 2.0);
        else
            diag = (b * b - a * a) / (s * (s + 2.0));
        j(k, k) = diag;
        if (k + 1 < n) {
            const double kk = k + 1.0;
            double off2;
            if (k == 0)
                off2 = 4.0 * (1.0 + a) * (1.0 + b) /
                       ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
            else
                off2 = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) /
                       ((2.0 * kk + a + b) * (2.0 * kk + a + b) *
                        (2.0 * kk + a + b + 1.0) * (2.0 * kk + a + b - 1.0));
            j(k, k + 1) = j(k + 1, k) = std::sqrt(off2);
        }
    }
    const EigDecomposition e = sym_eig(j);
    // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx
    const double mu0 =
        std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                 std::lgamma(a + b + 2.0));
    GaussRule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        rule.nodes[k] = e.values[k];
        const double q0 = e.vectors(0, k);
        rule.weights[k] = mu0 * q0 * q0;
    }
    return rule;
}

} // namespace

GaussRule1D gauss_jacobi_01(int npts, double a, double b) {
    if (npts < 1) throw NumericalError("gauss_jacobi_01: need npts >= 1");
    if (!(a > -1.0) || !(b > -1.0))
        throw IntegrabilityError("gauss_jacobi_01: exponents must exceed -1");
    GaussRule1D r = golub_welsch(npts, a, b);
    // x in [-1,1] -> u = (1+x)/2; weight (1-x)^a (1+x)^b dx =
    // 2^{a+b+1} (1-u)^a u^b du.
    const double scale = std::pow(2.0, -(a + b + 1.0));
    for (int k = 0; k < npts; ++k) {
        r.nodes[k] = 0.5 * (1.0 + r.nodes[k]);
        r.weights[k] *= scale;
    }
    return r;
}

BaryQuadRule simplex_rule_barycentric(int dim, int npts) {
    if (dim < 1) throw NumericalError("simplex_rule_barycentric: dim >= 1 required");
    if (npts < 1) throw NumericalError("simplex_rule_barycentric: npts >= 1 required");

    // Stick-breaking map from [0,1]^d:
    //   lambda_k = u_k * prod_{m<k} (1-u_m),  k = 1..d,
    //   lambda_0 = prod_m (1-u_m),
    // with Jacobian prod_k (1-u_k)^{d-k}, absorbed into the axis-k rule.
    std::vector<GaussRule1D> axis(dim);
    for (int k = 1; k <= dim; ++k) axis[k - 1] = gauss_jacobi_01(npts, static_cast<double>(dim - k));

    BaryQuadRule rule;
    const int total = [&] {
        int t = 1;
        for (int k = 0; k < dim; ++k) t *= npts;
        return t;
    }();
    rule.points.reserve(total);
    rule.weights.reserve(total);

    std::vector<int> idx(dim, 0);
    // int over [0,1]^d of the Jacobian is 1/d!, and the normalized measure
    // divides by the reference volume 1/d!, so the absorbed rules already
    // give weights summing to d! * (1/d!) ... they sum to 1/d! and we
    // rescale by d! below.
    double dfact = 1.0;
    for (int k = 2; k <= dim; ++k) dfact *= k;

    while (true) {
        Vec lambda(dim + 1, 0.0);
        double w = dfact;
        double rest = 1.0;
        for (int k = 0; k < dim; ++k) {
            const double u = axis[k].nodes[idx[k]];
            w *= axis[k].weights[idx[k]];
            lambda[k + 1] = u * rest;
            rest *= 1.0 - u;
        }
        lambda[0] = rest;
        rule.points.push_back(std::move(lambda));
        rule.weights.push_back(w);

        int k = 0;
        while (k < dim && ++idx[k] == npts) idx[k++] = 0;
        if (k == dim) break;
    }
    return rule;
}

QuadRule quad_rule_simplex(const Simplex& s, int npts) {
    const BaryQuadRule ref = simplex_rule_barycentric(s.dim(), npts);
    QuadRule rule;
    rule.points.reserve(ref.points.size());
    rule.weights.reserve(ref.points.size());
    const double vol = s.volume();
    for (size_t q = 0; q < ref.points.size(); ++q) {
        rule.points.push_back(s.point_from_barycentric(ref.points[q]));
        rule.weights.push_back(vol * ref.weights[q]);
    }
    return rule;
}

} // namespace histop
