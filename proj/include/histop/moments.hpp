#pragma once

#include <functional>
#include <span>
#include <vector>

#include "histop/barypoly.hpp"
#include "histop/geometry.hpp"
#include "histop/quadrature.hpp"
#include "histop/weights.hpp"

namespace histop {

/// (1/|S_d|) int_{S_d} prod lambda_i^{a_i} dx
///   = d! prod Gamma(a_i + 1) / Gamma(d + 1 + sum a_i),
/// evaluated through log-Gamma. Requires every a_i > -1.
double mean_monomial_moment(const Vec& exponents);

/// int_{S_d} prod lambda_i^{a_i} dx = |S_d| * mean_monomial_moment.
double monomial_moment(const Simplex& s, const Vec& exponents);

/// int p * Omega over the simplex carrying the (normalized) weight. The
/// value is intrinsic to barycentric coordinates, hence identical on all
/// affine images of a simplex with pullback-transported weights.
double weighted_integral(const WeightSpec& w, const BaryPoly& p);

/// <p, q>_Omega with int Omega = 1, so <1,1> = 1 for every weight.
double inner_product_volume(const Simplex& s, const WeightSpec& w, const BaryPoly& p,
                            const BaryPoly& q);

/// <p, q>_{omega_j} on face j; p, q are polynomials in the d face
/// barycentrics mu_{j,i} (increasing-i order).
double inner_product_face(const Simplex& s, const WeightSpec& w, int j, const BaryPoly& p,
                          const BaryPoly& q);

/// L2 norm ||p||_Omega = sqrt(<p,p>).
double weighted_norm(const WeightSpec& w, const BaryPoly& p);

/// Prescribed data of one element: face averages I_j, face quadratic
/// moments L_j, interior moments V_k.
struct DataVector {
    Vec face_avg;  // d+1
    Vec face_quad; // d+1
    Vec interior;  // d~
};

using ScalarField = std::function<double(const Point&)>;

/// Quadrature tables for evaluating (I_j, L_j, V_k) of an arbitrary
/// function. Tables are built once per weight/basis choice and reused
/// across all affine-equivalent simplices (barycentric pullback
/// transport). Dirichlet weights with any alpha_i < 1 are refused: the
/// density is boundary-singular and plain Gauss quadrature would be
/// silently inaccurate.
class FunctionalEvaluator {
public:
    FunctionalEvaluator(int dim, const WeightSpec& w, std::span<const BaryPoly> face_q,
                        std::span<const BaryPoly> rho, int npts = 5);

    DataVector evaluate(const Simplex& s, const ScalarField& f) const;

    int dim() const { return dim_; }

private:
    struct FaceTable {
        std::vector<Vec> bary;  // points on the (d-1)-face simplex
        Vec wdens;              // rule weight * face density * area factor
        Vec qvals;              // q_j at the points
    };
    struct VolumeTable {
        std::vector<Vec> bary;
        Vec wdens;
        std::vector<Vec> rhovals; // one row of values per rho_k
    };

    int dim_;
    std::vector<FaceTable> faces_;
    VolumeTable volume_;
};

/// One-shot convenience wrapper around FunctionalEvaluator.
DataVector functional_data(const Simplex& s, const WeightSpec& w,
                           std::span<const BaryPoly> face_q, std::span<const BaryPoly> rho,
                           const ScalarField& f, int npts = 5);

} // namespace histop
