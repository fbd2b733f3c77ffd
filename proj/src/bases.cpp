#include "histop/bases.hpp"

#include <cmath>
#include <functional>

namespace histop {

namespace {

using InnerProduct = std::function<double(const BaryPoly&, const BaryPoly&)>;

// Pivoted modified Gram-Schmidt under a generic inner product. Picks the
// largest remaining norm at every step (ties broken by index), stops when
// the target count is reached, and reports rank deficiency otherwise.
std::vector<BaryPoly> orthonormalize(std::vector<BaryPoly> work, const InnerProduct& ip,
                                     size_t count, const char* what) {
    std::vector<BaryPoly> out;
    out.reserve(count);
    std::vector<double> norm2(work.size());
    double scale = 0.0;
    for (size_t i = 0; i < work.size(); ++i) {
        norm2[i] = ip(work[i], work[i]);
        scale = std::max(scale, norm2[i]);
    }
    const double tol2 = 1e-20 * (scale > 0.0 ? scale : 1.0);
    std::vector<bool> used(work.size(), false);
    while (out.size() < count) {
        size_t piv = work.size();
        double best = tol2;
        for (size_t i = 0; i < work.size(); ++i)
            if (!used[i] && norm2[i] > best) { best = norm2[i]; piv = i; }
        if (piv == work.size())
            throw ConstructionError(std::string(what) + ": rank deficiency");
        used[piv] = true;
        BaryPoly u = work[piv] * (1.0 / std::sqrt(norm2[piv]));
        for (size_t i = 0; i < work.size(); ++i) {
            if (used[i]) continue;
            work[i] -= ip(work[i], u) * u;
            norm2[i] = ip(work[i], work[i]);
        }
        out.push_back(std::move(u));
    }
    return out;
}

BaryPoly project_p1(const std::vector<BaryPoly>& coords, const InnerProduct& ip,
                    const BaryPoly& p) {
    const int n = static_cast<int>(coords.size());
    Mat gram(n, n);
    Vec rhs(n);
    for (int i = 0; i < n; ++i) {
        rhs[i] = ip(p, coords[i]);
        for (int k = i; k < n; ++k) gram(i, k) = gram(k, i) = ip(coords[i], coords[k]);
    }
    Vec c;
    try {
        c = lu_solve(gram, rhs);
    } catch (const NumericalError&) {
        throw ConstructionError("P1 projection: Gram solve failed");
    }
    BaryPoly proj(p.nvars());
    for (int i = 0; i < n; ++i) proj += c[i] * coords[i];
    return proj;
}

std::vector<BaryPoly> coordinate_polys(int nvars) {
    std::vector<BaryPoly> v;
    v.reserve(nvars);
    for (int i = 0; i < nvars; ++i) v.push_back(BaryPoly::lambda(nvars, i));
    return v;
}

// All pair products lambda_a lambda_b, a < b, in lexicographic order.
std::vector<std::pair<int, int>> vertex_pairs(int dim) {
    std::vector<std::pair<int, int>> p;
    for (int a = 0; a <= dim; ++a)
        for (int b = a + 1; b <= dim; ++b) p.emplace_back(a, b);
    return p;
}

} // namespace

int interior_count(int dim) { return (dim - 2) * (dim + 1) / 2; }

BaryPoly project_p1_volume(const Simplex& s, const WeightSpec& w, const BaryPoly& p) {
    const InnerProduct ip = [&](const BaryPoly& a, const BaryPoly& b) {
        return inner_product_volume(s, w, a, b);
    };
    return project_p1(coordinate_polys(s.dim() + 1), ip, p);
}

BaryPoly project_p1_face(const Simplex& s, const WeightSpec& w, int j, const BaryPoly& p) {
    const InnerProduct ip = [&](const BaryPoly& a, const BaryPoly& b) {
        return inner_product_face(s, w, j, a, b);
    };
    return project_p1(coordinate_polys(s.dim()), ip, p);
}

BaryPoly face_bubble(int dim, int j, int offset) {
    const int n = dim + 1;
    const int a = ((j + offset) % n + n) % n;
    const int b = (a + 1) % n;
    return BaryPoly::lambda(n, a) * BaryPoly::lambda(n, b);
}

std::vector<BaryPoly> build_psi(const Simplex& s, const WeightSpec& w, int offset) {
    if (s.dim() < 2) throw ConstructionError("build_psi: requires d >= 2");
    const int d = s.dim();
    std::vector<BaryPoly> psi;
    psi.reserve(d + 1);
    for (int j = 0; j <= d; ++j) {
        const BaryPoly g = face_bubble(d, j, offset);
        psi.push_back(g - project_p1_volume(s, w, g));
    }
    // Independence check on the normalized family.
    Vec norms(d + 1);
    for (int i = 0; i <= d; ++i) {
        norms[i] = weighted_norm(w, psi[i]);
        if (!(norms[i] > 0.0)) throw ConstructionError("build_psi: zero residual");
    }
    Mat gram(d + 1, d + 1);
    for (int i = 0; i <= d; ++i)
        for (int k = 0; k <= d; ++k)
            gram(i, k) = inner_product_volume(s, w, psi[i], psi[k]) / (norms[i] * norms[k]);
    if (std::abs(determinant(gram)) <= 1e-12)
        throw ConstructionError("build_psi: bubble residuals numerically dependent");
    return psi;
}

std::vector<BaryPoly> build_rho_dirichlet(const Simplex& s, const Vec& alpha) {
    const int d = s.dim();
    if (static_cast<int>(alpha.size()) != d + 1)
        throw ConstructionError("build_rho_dirichlet: parameter arity mismatch");
    for (double a : alpha)
        if (!(a > 0.0)) throw ConstructionError("build_rho_dirichlet: alpha must be positive");
    double ssum = 0.0;
    for (double a : alpha) ssum += a;

    std::vector<BaryPoly> rho;
    for (const auto& [j, l] : vertex_pairs(d)) {
        const double kl = alpha[l] / (ssum + 2.0);
        const double kj = alpha[j] / (ssum + 2.0);
        const double h = alpha[j] * alpha[l] / ((ssum + 1.0) * (ssum + 2.0));
        BaryPoly p = BaryPoly::lambda(d + 1, j) * BaryPoly::lambda(d + 1, l);
        p -= kl * BaryPoly::lambda(d + 1, j);
        p -= kj * BaryPoly::lambda(d + 1, l);
        p += BaryPoly::constant(d + 1, h);
        rho.push_back(std::move(p));
    }
    return rho;
}

std::vector<BaryPoly> split_V_W(const Simplex& s, const WeightSpec& w,
                                std::span<const BaryPoly> psi) {
    const int d = s.dim();
    const InnerProduct ip = [&](const BaryPoly& a, const BaryPoly& b) {
        return inner_product_volume(s, w, a, b);
    };
    const std::vector<BaryPoly> wbasis =
        orthonormalize({psi.begin(), psi.end()}, ip, psi.size(), "split_V_W (psi)");

    std::vector<BaryPoly> residuals;
    for (const auto& [a, b] : vertex_pairs(d)) {
        BaryPoly sigma = BaryPoly::lambda(d + 1, a) * BaryPoly::lambda(d + 1, b);
        sigma -= project_p1_volume(s, w, sigma);
        for (const BaryPoly& u : wbasis) sigma -= ip(sigma, u) * u;
        residuals.push_back(std::move(sigma));
    }
    return orthonormalize(std::move(residuals), ip, interior_count(d), "split_V_W (rho)");
}

int default_lstar(int dim, int j, int offset) {
    const int n = dim + 1;
    // g_l vanishes on F_j iff l = j - offset or l = j - offset - 1 (cyclic).
    const int dead1 = ((j - offset) % n + n) % n;
    const int dead2 = ((j - offset - 1) % n + n) % n;
    for (int shift = 2; shift < 2 + n; ++shift) {
        const int cand = (j + shift) % n;
        if (cand != dead1 && cand != dead2) return cand;
    }
    throw ConstructionError("default_lstar: no surviving bubble"); // unreachable for d >= 2
}

namespace {

std::vector<BaryPoly> s2_face_basis(const Simplex& s, const WeightSpec& w, int j) {
    const int d = s.dim();
    const InnerProduct ip = [&](const BaryPoly& a, const BaryPoly& b) {
        return inner_product_face(s, w, j, a, b);
    };
    std::vector<BaryPoly> residuals;
    for (const auto& [a, b] : vertex_pairs(d - 1)) {
        BaryPoly sigma = BaryPoly::lambda(d, a) * BaryPoly::lambda(d, b);
        sigma -= project_p1_face(s, w, j, sigma);
        residuals.push_back(std::move(sigma));
    }
    return orthonormalize(std::move(residuals), ip, static_cast<size_t>(d * (d - 1) / 2),
                          "S2(F_j) basis");
}

} // namespace

BaryPoly build_q_default(const Simplex& s, const WeightSpec& w, int j, int offset, int lstar) {
    const int d = s.dim();
    if (d < 2) throw ConstructionError("build_q_default: requires d >= 2");
    if (j < 0 || j > d) throw GeometryError("build_q_default: face index out of range");
    if (lstar < 0) lstar = default_lstar(d, j, offset);

    const std::vector<BaryPoly> tau = s2_face_basis(s, w, j);
    const int m = static_cast<int>(tau.size());

    auto pairing = [&](int l) {
        const BaryPoly gl = face_bubble(d, l, offset).restrict_to_face(j);
        Vec v(m);
        for (int i = 0; i < m; ++i) v[i] = inner_product_face(s, w, j, gl, tau[i]);
        return v;
    };

    Vec target = pairing(lstar);
    {
        double n2 = 0.0;
        for (double x : target) n2 += x * x;
        if (!(n2 > 1e-24))
            throw ConstructionError("build_q_default: chosen bubble vanishes on the face");
    }

    // Project the target direction onto the kernel of the other surviving
    // pairings (Euclidean Gram-Schmidt on the constraint rows).
    std::vector<Vec> cons;
    const int n = d + 1;
    const int dead1 = ((j - offset) % n + n) % n;
    const int dead2 = ((j - offset - 1) % n + n) % n;
    for (int l = 0; l < n; ++l) {
        if (l == lstar || l == dead1 || l == dead2) continue;
        Vec row = pairing(l);
        for (const Vec& r : cons) {
            double dot = 0.0;
            for (int i = 0; i < m; ++i) dot += row[i] * r[i];
            for (int i = 0; i < m; ++i) row[i] -= dot * r[i];
        }
        double n2 = 0.0;
        for (double x : row) n2 += x * x;
        if (n2 > 1e-24) {
            const double inv = 1.0 / std::sqrt(n2);
            for (double& x : row) x *= inv;
            cons.push_back(std::move(row));
        }
    }
    for (const Vec& r : cons) {
        double dot = 0.0;
        for (int i = 0; i < m; ++i) dot += target[i] * r[i];
        for (int i = 0; i < m; ++i) target[i] -= dot * r[i];
    }
    double n2 = 0.0;
    for (double x : target) n2 += x * x;
    if (!(n2 > 1e-24))
        throw ConstructionError("build_q_default: kernel empty (face-separation violated)");

    const double inv = 1.0 / std::sqrt(n2);
    BaryPoly q(d);
    for (int i = 0; i < m; ++i) q += (target[i] * inv) * tau[i];
    return q;
}

BaryPoly build_q_optimal(const Simplex& s, const WeightSpec& w, int j,
                         std::span<const BaryPoly> psi, int i_of_j) {
    if (j < 0 || j > s.dim()) throw GeometryError("build_q_optimal: face index out of range");
    if (i_of_j < 0 || i_of_j >= static_cast<int>(psi.size()))
        throw ConstructionError("build_q_optimal: i(j) out of range");
    const BaryPoly trace = psi[i_of_j].restrict_to_face(j);
    BaryPoly residual = trace - project_p1_face(s, w, j, trace);
    const double norm = weighted_norm(face_weight(w, j), residual);
    if (!(norm > 1e-12)) throw ConstructionError("build_q_optimal: face-degenerate psi");
    return residual * (1.0 / norm);
}

std::vector<BaryPoly> build_rho_optimal(const Simplex& s, const WeightSpec& w,
                                        std::span<const BaryPoly> generators) {
    std::vector<BaryPoly> out;
    out.reserve(generators.size());
    for (const BaryPoly& p : generators) {
        BaryPoly residual = p - project_p1_volume(s, w, p);
        const double norm = weighted_norm(w, residual);
        if (!(norm > 1e-12)) throw ConstructionError("build_rho_optimal: zero projection");
        out.push_back(residual * (1.0 / norm));
    }
    return out;
}

BasisBundle raw_bundle(const Simplex& s, const WeightSpec& w, int offset) {
    const int d = s.dim();
    w.validate(d + 1);
    BasisBundle b{s, w, {}, {}, {}, false, false, false, offset};
    b.psi = build_psi(s, w, offset);
    // Interior family: residuals of the pair products not used by the
    // bubbles, i.e. the non-cyclically-adjacent vertex pairs.
    for (const auto& [a, c] : vertex_pairs(d)) {
        const bool adjacent = (c - a == 1) || (a == 0 && c == d);
        if (adjacent) continue;
        BaryPoly sigma = BaryPoly::lambda(d + 1, a) * BaryPoly::lambda(d + 1, c);
        b.rho.push_back(sigma - project_p1_volume(s, w, sigma));
    }
    for (int j = 0; j <= d; ++j) b.q.push_back(build_q_default(s, w, j, offset));
    return b;
}

BasisBundle canonical_bundle(const Simplex& s, const WeightSpec& w, int offset) {
    const int d = s.dim();
    w.validate(d + 1);
    BasisBundle b{s, w, {}, {}, {}, true, true, false, offset};
    b.psi = build_psi(s, w, offset);
    b.rho = split_V_W(s, w, b.psi);
    for (int j = 0; j <= d; ++j) b.q.push_back(build_q_default(s, w, j, offset));
    return b;
}

} // namespace histop
