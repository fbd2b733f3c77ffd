#pragma once

#include <optional>
#include <string>

#include "histop/bases.hpp"
#include "histop/linalg.hpp"

namespace histop {

/// The structured blocks of one element:
///   [A]_{ji}  = I_j(lambda_i)          (d+1)x(d+1), row-stochastic, zero diagonal
///   [G]_{kl}  = <rho_l, rho_k>_Omega   d~ x d~, SPD
///   [C]_{ki}  = <psi_i, rho_k>_Omega   d~ x (d+1)
///   [Ct]_{jl} = <rho_l, q_j>_{omega_j} (d+1) x d~
///   [M]_{ji}  = <psi_i, q_j>_{omega_j} (d+1)x(d+1)
///   H = [[G, C], [Ct, M]]
/// plus the face-average rows of the quadratic bases, needed to assemble
/// the affine stage of the reconstruction.
struct MomentSystem {
    BasisBundle bundle;
    Mat A;
    Mat G;
    Mat C;
    Mat Ct;
    Mat M;
    Mat H;
    Mat iface_quad; // (d+1) x (d+1 + d~), columns ordered [psi..., rho...]

    int dim() const { return bundle.dim(); }
    int n_interior() const { return bundle.n_interior(); }
};

MomentSystem assemble(const BasisBundle& bundle);

struct ScaledSystem {
    Vec theta;   // d+1 face scales
    Vec upsilon; // d~ interior scales
    Mat Htilde;  // diag(upsilon, theta) * H
    double kappa2 = 0.0;
    double detHtilde = 0.0;
};

struct StabilityReport {
    Mat T; // Schur complement M - Ct G^{-1} C
    Mat K11, K12, K21, K22;
    Mat S;    // K11 - K12 K22^{-1} K21
    Mat Shat; // G^{-1/2} S G^{-1/2}
    double beta = 0.0;
    double kappaH = 0.0;
    double detA = 0.0;
    double detT = 0.0;
    double detH = 0.0;
    bool unisolvent = false;
    std::string diagnosis; // set when !unisolvent
    std::optional<ScaledSystem> scaled;
};

/// Unisolvence verdict: A and T = M - Ct G^{-1} C invertible, with
/// scale-relative determinant margins. Fills T and the determinants only.
/// A rank-deficient quadratic basis is reported as "G not SPD" rather
/// than thrown, so sweeps can record the verdict.
StabilityReport unisolvence(const MomentSystem& sys);

/// Full spectral analysis: K blocks, S, Shat = G^{-1/2} S G^{-1/2}, and
/// beta = sqrt(max(sigma_min(Shat), 0)). Requires M invertible (throws
/// UnisolvenceError "face functionals dependent" otherwise) and G SPD.
/// For d~ = 0 (triangles) the interior block is empty and beta = 1 by the
/// vacuous-infimum convention.
StabilityReport stability(const MomentSystem& sys);

/// stability() plus the diagonal scaling, stored in report.scaled.
StabilityReport stability(const MomentSystem& sys, const Vec& theta, const Vec& upsilon);

/// Diagonal scaling of the quadratic moment functionals,
/// Htilde = diag(upsilon, theta) H, with its 2-norm condition number.
ScaledSystem scale(const MomentSystem& sys, const Vec& theta, const Vec& upsilon);

/// beta_reg = sqrt(sigma_min(G^{-1/2} (S + alpha_reg I) G^{-1/2})).
double regularized_beta(const MomentSystem& sys, const StabilityReport& st, double alpha_reg);

/// Change of basis in W making M the identity (psi_i -> sum_m
/// [M^{-1}]_{mi} psi_m); returns the re-assembled system.
MomentSystem normalize_M(const MomentSystem& sys);

} // namespace histop
