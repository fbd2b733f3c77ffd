#include "histop/momentsystem.hpp"

#include <cmath>

namespace histop {

namespace {

// Scale-relative singularity threshold: |det| must exceed
// 1e-10 * (geometric mean of row 2-norms)^n. Affine invariance of the
// blocks makes absolute thresholds meaningless.
double det_margin_scale(const Mat& a) {
    const int n = a.rows();
    if (n == 0) return 1.0;
    double logsum = 0.0;
    for (int i = 0; i < n; ++i) {
        double r2 = 0.0;
        for (int j = 0; j < n; ++j) r2 += a(i, j) * a(i, j);
        if (r2 <= 0.0) return 0.0;
        logsum += 0.5 * std::log(r2);
    }
    return std::exp(logsum);
}

bool det_above_tolerance(const Mat& a, double det) {
    const double scale = det_margin_scale(a);
    return std::abs(det) > 1e-10 * scale;
}

Mat block_matrix(const Mat& g, const Mat& c, const Mat& ct, const Mat& m) {
    const int nt = g.rows();
    const int nf = m.rows();
    Mat h(nt + nf, nt + nf);
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nt; ++j) h(i, j) = g(i, j);
        for (int j = 0; j < nf; ++j) h(i, nt + j) = c(i, j);
    }
    for (int i = 0; i < nf; ++i) {
        for (int j = 0; j < nt; ++j) h(nt + i, j) = ct(i, j);
        for (int j = 0; j < nf; ++j) h(nt + i, nt + j) = m(i, j);
    }
    return h;
}

// Relative symmetry defect check followed by explicit symmetrization;
// block arithmetic introduces roundoff while the exact matrix is
// symmetric.
Mat checked_symmetrize(const Mat& a, const char* what) {
    if (symmetry_defect(a) > 1e-9)
        throw NumericalError(std::string(what) + ": symmetry defect beyond tolerance");
    return 0.5 * (a + a.transposed());
}

} // namespace

MomentSystem assemble(const BasisBundle& bundle) {
    const Simplex& s = bundle.simplex;
    const WeightSpec& w = bundle.weight;
    const int d = s.dim();
    const int nt = bundle.n_interior();
    if (static_cast<int>(bundle.psi.size()) != d + 1 ||
        static_cast<int>(bundle.q.size()) != d + 1)
        throw ConstructionError("assemble: bundle has wrong psi/q counts");

    MomentSystem sys{bundle, Mat(d + 1, d + 1), Mat(nt, nt), Mat(nt, d + 1),
                     Mat(d + 1, nt), Mat(d + 1, d + 1), Mat(), Mat(d + 1, d + 1 + nt)};

    for (int j = 0; j <= d; ++j) {
        const WeightSpec fw = face_weight(w, j);
        for (int i = 0; i <= d; ++i) {
            const BaryPoly li = BaryPoly::lambda(d + 1, i).restrict_to_face(j);
            sys.A(j, i) = weighted_integral(fw, li);
            const BaryPoly pi = bundle.psi[i].restrict_to_face(j);
            sys.M(j, i) = weighted_integral(fw, pi * bundle.q[j]);
            sys.iface_quad(j, i) = weighted_integral(fw, pi);
        }
        for (int l = 0; l < nt; ++l) {
            const BaryPoly rl = bundle.rho[l].restrict_to_face(j);
            sys.Ct(j, l) = weighted_integral(fw, rl * bundle.q[j]);
            sys.iface_quad(j, d + 1 + l) = weighted_integral(fw, rl);
        }
    }
    for (int k = 0; k < nt; ++k) {
        for (int l = 0; l < nt; ++l)
            sys.G(k, l) = inner_product_volume(s, w, bundle.rho[l], bundle.rho[k]);
        for (int i = 0; i <= d; ++i)
            sys.C(k, i) = inner_product_volume(s, w, bundle.psi[i], bundle.rho[k]);
    }
    sys.H = block_matrix(sys.G, sys.C, sys.Ct, sys.M);
    return sys;
}

StabilityReport unisolvence(const MomentSystem& sys) {
    StabilityReport rep;
    rep.detA = determinant(sys.A);
    rep.detH = determinant(sys.H);

    const int nt = sys.n_interior();
    // The combined quadratic Gram [[G, C], [C^T, Gram(psi)]] is SPD iff
    // the rho/psi family is linearly independent; a duplicated psi shows
    // up here before it corrupts the Schur complement.
    {
        const int d = sys.dim();
        const int n = nt + d + 1;
        Mat q(n, n);
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < nt; ++j) q(i, j) = sys.G(i, j);
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j <= d; ++j) q(i, nt + j) = q(nt + j, i) = sys.C(i, j);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                q(nt + i, nt + j) = inner_product_volume(sys.bundle.simplex, sys.bundle.weight,
                                                         sys.bundle.psi[i], sys.bundle.psi[j]);
        const EigDecomposition e = sym_eig(checked_symmetrize(q, "quadratic Gram"));
        if (!(e.values.front() > 1e-12 * std::max(e.values.back(), 0.0))) {
            rep.unisolvent = false;
            rep.diagnosis = "G not SPD";
            rep.T = Mat(sys.dim() + 1, sys.dim() + 1);
            rep.detT = 0.0;
            return rep;
        }
    }

    rep.T = nt > 0 ? sys.M - sys.Ct * lu_solve(sys.G, sys.C) : sys.M;
    rep.detT = determinant(rep.T);

    const bool a_ok = det_above_tolerance(sys.A, rep.detA);
    const bool t_ok = det_above_tolerance(rep.T, rep.detT);
    rep.unisolvent = a_ok && t_ok;
    if (!a_ok)
        rep.diagnosis = "A singular within tolerance";
    else if (!t_ok)
        rep.diagnosis = "Schur complement T singular within tolerance";
    return rep;
}

StabilityReport stability(const MomentSystem& sys) {
    StabilityReport rep = unisolvence(sys);
    if (rep.diagnosis == "G not SPD") throw NumericalError("stability: G not SPD");

    const double detM = determinant(sys.M);
    if (!det_above_tolerance(sys.M, detM))
        throw UnisolvenceError("stability: face functionals dependent (M singular)");

    const int nt = sys.n_interior();
    const Mat mtm = sys.M.transposed() * sys.M;
    const Mat g2 = sys.G * sys.G;
    rep.K11 = checked_symmetrize(sys.Ct.transposed() * mtm * sys.Ct + sys.G * g2, "K11");
    rep.K12 = sys.Ct.transposed() * mtm * sys.M + g2 * sys.C;
    rep.K21 = sys.M.transposed() * mtm * sys.Ct + sys.C.transposed() * g2;
    rep.K22 = checked_symmetrize(sys.M.transposed() * mtm * sys.M +
                                     sys.C.transposed() * sys.G * sys.C,
                                 "K22");

    if (nt == 0) {
        // No interior component (d = 2): the infimum over V is vacuous and
        // the face system alone governs; report the canonical optimum.
        rep.S = Mat(0, 0);
        rep.Shat = Mat(0, 0);
        rep.beta = 1.0;
    } else {
        rep.S = checked_symmetrize(rep.K11 - rep.K12 * lu_solve(rep.K22, rep.K21), "S");
        const Mat ginvsqrt = inv_sqrt_spd(checked_symmetrize(sys.G, "G"));
        rep.Shat = checked_symmetrize(ginvsqrt * rep.S * ginvsqrt, "Shat");
        rep.beta = std::sqrt(std::max(min_eigenvalue(rep.Shat), 0.0));
    }
    rep.kappaH = cond2(sys.H);
    return rep;
}

StabilityReport stability(const MomentSystem& sys, const Vec& theta, const Vec& upsilon) {
    StabilityReport rep = stability(sys);
    rep.scaled = scale(sys, theta, upsilon);
    return rep;
}

ScaledSystem scale(const MomentSystem& sys, const Vec& theta, const Vec& upsilon) {
    const int d = sys.dim();
    const int nt = sys.n_interior();
    if (static_cast<int>(theta.size()) != d + 1 || static_cast<int>(upsilon.size()) != nt)
        throw ConfigError("scale: parameter arity mismatch");
    for (double t : theta)
        if (!(t > 0.0)) throw ConfigError("scale: theta must be positive");
    for (double u : upsilon)
        if (!(u > 0.0)) throw ConfigError("scale: upsilon must be positive");

    ScaledSystem sc;
    sc.theta = theta;
    sc.upsilon = upsilon;
    sc.Htilde = sys.H;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < sc.Htilde.cols(); ++j) sc.Htilde(i, j) *= upsilon[i];
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j < sc.Htilde.cols(); ++j) sc.Htilde(nt + i, j) *= theta[i];
    sc.kappa2 = cond2(sc.Htilde);
    sc.detHtilde = determinant(sc.Htilde);
    return sc;
}

double regularized_beta(const MomentSystem& sys, const StabilityReport& st, double alpha_reg) {
    if (alpha_reg < 0.0) throw ConfigError("regularized_beta: shift must be nonnegative");
    if (sys.n_interior() == 0) return std::sqrt(1.0 + alpha_reg);
    const Mat shifted = st.S + alpha_reg * Mat::identity(st.S.rows());
    const Mat ginvsqrt = inv_sqrt_spd(checked_symmetrize(sys.G, "G"));
    const Mat shat = checked_symmetrize(ginvsqrt * shifted * ginvsqrt, "Shat_reg");
    return std::sqrt(std::max(min_eigenvalue(shat), 0.0));
}

MomentSystem normalize_M(const MomentSystem& sys) {
    const double detM = determinant(sys.M);
    if (!det_above_tolerance(sys.M, detM))
        throw UnisolvenceError("normalize_M: face functionals dependent (M singular)");
    const Mat minv = inverse(sys.M);
    const int d = sys.dim();

    BasisBundle nb = sys.bundle;
    for (int i = 0; i <= d; ++i) {
        BaryPoly psi_new = BaryPoly::zero(d + 1);
        for (int m = 0; m <= d; ++m) psi_new += minv(m, i) * sys.bundle.psi[m];
        nb.psi[i] = std::move(psi_new);
    }
    nb.m_normalized = true;
    return assemble(nb);
}

} // namespace histop
