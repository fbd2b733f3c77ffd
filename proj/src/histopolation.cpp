#include "histop/histopolation.hpp"

#include <cmath>

#include "histop/quadrature.hpp"

namespace histop {

std::string scheme_name(Scheme s) { return s == Scheme::Linear ? "linear" : "quadratic"; }

double LocalSolution::eval(const BasisBundle& bundle, const Vec& lambda) const {
    double v = 0.0;
    for (size_t i = 0; i < a.size(); ++i) v += a[i] * lambda[i];
    for (size_t j = 0; j < gamma.size(); ++j) v += gamma[j] * bundle.psi[j].eval(lambda);
    for (size_t k = 0; k < xi.size(); ++k) v += xi[k] * bundle.rho[k].eval(lambda);
    return v;
}

LocalSolution solve_local_quadratic(const MomentSystem& sys, const DataVector& data) {
    const int d = sys.dim();
    const int nt = sys.n_interior();
    if (static_cast<int>(data.face_avg.size()) != d + 1 ||
        static_cast<int>(data.face_quad.size()) != d + 1 ||
        static_cast<int>(data.interior.size()) != nt)
        throw Error("solve_local_quadratic: data arity mismatch");

    // Stage 1: quadratic component from H (xi; gamma) = (V; L). The face
    // and interior functionals annihilate P1, so the affine part does not
    // enter this stage.
    Vec rhs(nt + d + 1);
    for (int k = 0; k < nt; ++k) rhs[k] = data.interior[k];
    for (int j = 0; j <= d; ++j) rhs[nt + j] = data.face_quad[j];
    Vec qsol;
    try {
        qsol = lu_solve(sys.H, rhs);
    } catch (const NumericalError&) {
        throw UnisolvenceError("solve_local_quadratic: quadratic moment matrix singular");
    }

    LocalSolution sol;
    sol.xi.assign(qsol.begin(), qsol.begin() + nt);
    sol.gamma.assign(qsol.begin() + nt, qsol.end());

    // Stage 2: affine component from the face averages, subtracting the
    // quadratic part's averages via the stored I_j rows.
    Vec rhs_a(d + 1);
    for (int j = 0; j <= d; ++j) {
        double iq = 0.0;
        for (int i = 0; i <= d; ++i) iq += sys.iface_quad(j, i) * sol.gamma[i];
        for (int k = 0; k < nt; ++k) iq += sys.iface_quad(j, d + 1 + k) * sol.xi[k];
        rhs_a[j] = data.face_avg[j] - iq;
    }
    try {
        sol.a = lu_solve(sys.A, rhs_a);
    } catch (const NumericalError&) {
        throw UnisolvenceError("solve_local_quadratic: affine moment matrix singular");
    }

    // Data-match invariant, 1e-9 relative.
    double scale = 1e-30;
    for (double v : data.face_avg) scale = std::max(scale, std::abs(v));
    for (double v : data.face_quad) scale = std::max(scale, std::abs(v));
    for (double v : data.interior) scale = std::max(scale, std::abs(v));
    auto check = [&](double got, double want) {
        if (std::abs(got - want) > 1e-9 * std::max(scale, 1.0))
            throw NumericalError("solve_local_quadratic: reconstruction does not match data");
    };
    for (int j = 0; j <= d; ++j) {
        double iv = 0.0, lv = 0.0;
        for (int i = 0; i <= d; ++i) {
            iv += sys.A(j, i) * sol.a[i] + sys.iface_quad(j, i) * sol.gamma[i];
            lv += sys.M(j, i) * sol.gamma[i];
        }
        for (int k = 0; k < nt; ++k) {
            iv += sys.iface_quad(j, d + 1 + k) * sol.xi[k];
            lv += sys.Ct(j, k) * sol.xi[k];
        }
        check(iv, data.face_avg[j]);
        check(lv, data.face_quad[j]);
    }
    for (int k = 0; k < nt; ++k) {
        double vv = 0.0;
        for (int l = 0; l < nt; ++l) vv += sys.G(k, l) * sol.xi[l];
        for (int i = 0; i <= d; ++i) vv += sys.C(k, i) * sol.gamma[i];
        check(vv, data.interior[k]);
    }
    return sol;
}

Vec solve_local_linear(const MomentSystem& sys, const Vec& face_averages) {
    if (static_cast<int>(face_averages.size()) != sys.dim() + 1)
        throw Error("solve_local_linear: data arity mismatch");
    try {
        return lu_solve(sys.A, face_averages);
    } catch (const NumericalError&) {
        throw UnisolvenceError("solve_local_linear: affine moment matrix singular");
    }
}

namespace {

// Everything here is transported by barycentric pullback, so the bundle,
// the assembled system, the density tables, and the basis values at the
// quadrature points are shared across all elements of the mesh; only the
// target-function samples differ per element.
struct ElementEngine {
    MomentSystem sys;
    FunctionalEvaluator functionals;
    BaryQuadRule err_rule;
    std::vector<Vec> basis_at_err; // per point: [lambda..., psi..., rho...]

    ElementEngine(const WeightSpec& w, const StudyConfig& cfg)
        : sys(assemble(canonical_bundle(Simplex::reference(3), w))),
          functionals(3, w, sys.bundle.q, sys.bundle.rho, cfg.data_quad_pts),
          err_rule(simplex_rule_barycentric(3, cfg.error_quad_pts)) {
        basis_at_err.reserve(err_rule.points.size());
        const int d = 3;
        const int nt = sys.n_interior();
        for (const Vec& lam : err_rule.points) {
            Vec row(d + 1 + d + 1 + nt);
            for (int i = 0; i <= d; ++i) row[i] = lam[i];
            for (int i = 0; i <= d; ++i) row[d + 1 + i] = sys.bundle.psi[i].eval(lam);
            for (int k = 0; k < nt; ++k) row[2 * (d + 1) + k] = sys.bundle.rho[k].eval(lam);
            basis_at_err.push_back(std::move(row));
        }
    }

    double element_error_sq(const Simplex& elem, int index, const ScalarField& f,
                            Scheme scheme) const {
        const int d = 3;
        const int nt = sys.n_interior();
        LocalSolution sol;
        if (scheme == Scheme::Quadratic) {
            sol = solve_local_quadratic(sys, functionals.evaluate(elem, f));
        } else {
            DataVector data = functionals.evaluate(elem, f);
            sol.a = solve_local_linear(sys, data.face_avg);
            sol.gamma.assign(d + 1, 0.0);
            sol.xi.assign(nt, 0.0);
        }
        sol.element = index;
        double acc = 0.0;
        for (size_t q = 0; q < err_rule.points.size(); ++q) {
            const Vec& row = basis_at_err[q];
            double p = 0.0;
            for (int i = 0; i <= d; ++i) p += sol.a[i] * row[i];
            for (int i = 0; i <= d; ++i) p += sol.gamma[i] * row[d + 1 + i];
            for (int k = 0; k < nt; ++k) p += sol.xi[k] * row[2 * (d + 1) + k];
            const double diff = f(elem.point_from_barycentric(err_rule.points[q])) - p;
            acc += err_rule.weights[q] * diff * diff;
        }
        return acc * elem.volume();
    }
};

TetMesh make_mesh(int n, const StudyConfig& cfg) {
    return cfg.mesh_kind == MeshKind::Uniform ? uniform_mesh(n)
                                              : quasi_uniform_mesh(n, cfg.delta, cfg.seed);
}

} // namespace

double global_error(const TetMesh& mesh, const WeightSpec& w, const ScalarField& f,
                    Scheme scheme, const StudyConfig& cfg) {
    const ElementEngine engine(w, cfg);
    double acc = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        try {
            acc += engine.element_error_sq(mesh.element(e), e, f, scheme);
        } catch (const Error& err) {
            throw NumericalError("global_error: element " + std::to_string(e) + ": " +
                                 err.what());
        }
    }
    return std::sqrt(acc);
}

std::vector<ErrorRow> convergence_study(const ScalarField& f, const std::vector<int>& n_list,
                                        const std::vector<Scheme>& schemes,
                                        const StudyConfig& cfg) {
    const ElementEngine engine(cfg.weight, cfg);
    std::vector<ErrorRow> rows;
    std::vector<double> prev_err(schemes.size(), 0.0);
    double prev_h = 0.0;

    for (size_t level = 0; level < n_list.size(); ++level) {
        const TetMesh mesh = make_mesh(n_list[level], cfg);
        for (size_t si = 0; si < schemes.size(); ++si) {
            double acc = 0.0;
            for (int e = 0; e < mesh.n_elements(); ++e) {
                try {
                    acc += engine.element_error_sq(mesh.element(e), e, f, schemes[si]);
                } catch (const Error& err) {
                    throw NumericalError("convergence_study: n=" + std::to_string(n_list[level]) +
                                         " element " + std::to_string(e) + ": " + err.what());
                }
            }
            ErrorRow row;
            row.n = n_list[level];
            row.h = mesh.h;
            row.scheme = schemes[si];
            row.error = std::sqrt(acc);
            row.order = level == 0 ? std::nan("")
                                   : std::log(prev_err[si] / row.error) / std::log(prev_h / row.h);
            prev_err[si] = row.error;
            rows.push_back(row);
        }
        prev_h = mesh.h;
    }
    return rows;
}

ScalarField test_function(int id) {
    const double pi = 3.14159265358979323846;
    auto r = [](const Point& p) {
        return std::sqrt((p[0] - 0.5) * (p[0] - 0.5) + (p[1] - 0.5) * (p[1] - 0.5) +
                         (p[2] - 0.5) * (p[2] - 0.5));
    };
    switch (id) {
        case 1:
            return [pi](const Point& p) {
                return std::sin(2 * pi * p[0]) * std::sin(2 * pi * p[1]) * std::sin(2 * pi * p[2]);
            };
        case 2:
            return [pi](const Point& p) { return std::sin(2 * pi * p[0] * p[1] * p[2]); };
        case 3:
            return [](const Point& p) {
                return 1.0 / (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + 25.0);
            };
        case 4:
            return [](const Point& p) {
                return std::exp(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            };
        case 5:
            return [](const Point& p) {
                return std::sin(p[0]) * std::cos(p[1]) * std::exp(-p[2] * p[2]);
            };
        case 6:
            return [](const Point& p) {
                const double c = p[0] * p[1] * p[2];
                return std::log(c * c * c + 0.25);
            };
        case 7:
            return [r](const Point& p) { return r(p); };
        case 8:
            return [r](const Point& p) { return std::sin(10.0 * r(p)) * std::exp(-r(p)); };
        case 9:
            return [pi](const Point& p) {
                return std::sin(2 * pi * p[0] * p[1] * p[2]) *
                       std::exp(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            };
        default:
            throw ConfigError("test_function: id must lie in 1..9");
    }
}

int test_function_count() { return 9; }

} // namespace histop
