#pragma once

#include <span>
#include <vector>

#include "histop/barypoly.hpp"
#include "histop/geometry.hpp"
#include "histop/moments.hpp"
#include "histop/weights.hpp"

namespace histop {

/// The basis data of one element: face bubbles psi_j spanning W, interior
/// polynomials rho_k spanning V, and the face test polynomials q_j.
/// Counts: (d+1) psi, d~ = (d-2)(d+1)/2 rho, (d+1) q.
struct BasisBundle {
    Simplex simplex;
    WeightSpec weight;
    std::vector<BaryPoly> psi; // in d+1 variables
    std::vector<BaryPoly> rho; // in d+1 variables
    std::vector<BaryPoly> q;   // each in d variables (face barycentrics)
    bool orthonormal_rho = false;
    bool v_perp_w = false;
    bool m_normalized = false;
    /// Bubble indexing: g_j = lambda_{j+offset} * lambda_{j+offset+1} (cyclic).
    int bubble_offset = 0;

    int dim() const { return simplex.dim(); }
    int n_interior() const { return static_cast<int>(rho.size()); }
};

/// (d-2)(d+1)/2, the number of interior quadratic moments.
int interior_count(int dim);

/// Weighted L2-orthogonal projection onto P1 (span of the barycentric
/// coordinates), solving the (d+1)x(d+1) Gram system.
BaryPoly project_p1_volume(const Simplex& s, const WeightSpec& w, const BaryPoly& p);

/// Projection onto P1(F_j) under the induced face density; p lives in the
/// d face barycentrics.
BaryPoly project_p1_face(const Simplex& s, const WeightSpec& w, int j, const BaryPoly& p);

/// The quadratic bubble g_j = lambda_{j+offset} lambda_{j+offset+1} (cyclic).
BaryPoly face_bubble(int dim, int j, int offset = 0);

/// psi_j = (I - Pi_{1,Omega})(g_j), j = 0..d. Checks linear independence
/// through the Gram determinant of the normalized family.
std::vector<BaryPoly> build_psi(const Simplex& s, const WeightSpec& w, int offset = 0);

/// Closed-form Dirichlet interior family: for each vertex pair j < l,
///   rho_{jl} = lambda_j lambda_l - k_l lambda_j - k_j lambda_l + h_{jl},
/// with k_x = alpha_x / (S+2), h_{jl} = alpha_j alpha_l / ((S+1)(S+2)),
/// S = sum(alpha). Pairs are enumerated in lexicographic order; the full
/// family is a basis of S2 under the Dirichlet weight.
std::vector<BaryPoly> build_rho_dirichlet(const Simplex& s, const Vec& alpha);

/// Orthonormal basis of V = S2 (-) W: project the pair-product residuals
/// against W, then orthonormalize. Result is orthonormal in <.,.>_Omega
/// and orthogonal to every psi_j, so G = I and C = 0.
std::vector<BaryPoly> split_V_W(const Simplex& s, const WeightSpec& w,
                                std::span<const BaryPoly> psi);

/// Index of the bubble whose face restriction carries the single nonzero
/// entry of row j of M: the coordinated choice j+2 (mod d+1) when that
/// bubble survives on F_j, otherwise the first surviving index in cyclic
/// order (d = 2 leaves exactly one choice).
int default_lstar(int dim, int j, int offset = 0);

/// Face test polynomial of the explicit construction: unit omega_j-norm
/// element of S2(F_j) annihilating <g_l|F_j, .> for all surviving l
/// except lstar, with <g_lstar|F_j, q_j> > 0.
BaryPoly build_q_default(const Simplex& s, const WeightSpec& w, int j, int offset = 0,
                         int lstar = -1);

/// Spectrally optimal face polynomial: normalized P1(F_j)-orthogonal
/// residual of psi_{i(j)}|F_j; maximizes |<psi_{i(j)}|F_j, q>| over the
/// unit ball of S2(F_j). Unique up to sign; sign fixed to make the pairing
/// positive.
BaryPoly build_q_optimal(const Simplex& s, const WeightSpec& w, int j,
                         std::span<const BaryPoly> psi, int i_of_j);

/// Normalized projection residuals rho*_l = (I-Pi)(p_l)/||.||; the
/// best-conditioned interior Gram block over sign/scale choices.
std::vector<BaryPoly> build_rho_optimal(const Simplex& s, const WeightSpec& w,
                                        std::span<const BaryPoly> generators);

/// Explicit-construction bundle without orthogonalization: psi bubbles,
/// interior family = P1-residuals of the non-cyclically-adjacent pair
/// products (the complement of the bubble pairs), default q. Under a
/// Dirichlet weight the interior family coincides with the closed form.
BasisBundle raw_bundle(const Simplex& s, const WeightSpec& w, int offset = 0);

/// Orthonormal-split bundle: V = orthogonal complement of W, rho
/// orthonormal, so G = I and C = 0.
BasisBundle canonical_bundle(const Simplex& s, const WeightSpec& w, int offset = 0);

} // namespace histop
