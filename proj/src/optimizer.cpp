#include "histop/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace histop {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ParamVector ParamVector::ones(int dim) {
    return ParamVector{Vec(dim + 1, 1.0), Vec(dim + 1, 1.0),
                       Vec(static_cast<size_t>(interior_count(dim)), 1.0)};
}

void ParamVector::validate(int dim) const {
    if (static_cast<int>(alpha.size()) != dim + 1 || static_cast<int>(theta.size()) != dim + 1 ||
        static_cast<int>(upsilon.size()) != interior_count(dim))
        throw ConfigError("ParamVector: arity mismatch");
    for (double v : alpha)
        if (!(v > 0.0)) throw ConfigError("ParamVector: alpha must be positive");
    for (double v : theta)
        if (!(v > 0.0)) throw ConfigError("ParamVector: theta must be positive");
    for (double v : upsilon)
        if (!(v > 0.0)) throw ConfigError("ParamVector: upsilon must be positive");
}

ObjectiveInfo objective_info(int dim, const ParamVector& p, BasisMode bases) {
    p.validate(dim);
    ObjectiveInfo info;
    const Simplex ref = Simplex::reference(dim);
    const WeightSpec w = WeightSpec::dirichlet(p.alpha);
    const BasisBundle bundle =
        bases == BasisMode::Raw ? raw_bundle(ref, w) : canonical_bundle(ref, w);
    const MomentSystem sys = assemble(bundle);
    const StabilityReport st = stability(sys, p.theta, p.upsilon);
    info.unisolvent = st.unisolvent;
    info.beta = st.beta;
    info.kappa2 = st.scaled->kappa2;
    return info;
}

double objective(int dim, const ParamVector& p, ObjectiveMode mode, BasisMode bases) {
    try {
        const ObjectiveInfo info = objective_info(dim, p, bases);
        if (!info.unisolvent) return kInf;
        return mode == ObjectiveMode::MaxBeta ? -info.beta : info.kappa2;
    } catch (const Error&) {
        return kInf;
    }
}

namespace {

Vec to_log(const ParamVector& p) {
    Vec x;
    x.reserve(p.alpha.size() + p.theta.size() + p.upsilon.size());
    for (double v : p.alpha) x.push_back(std::log(v));
    for (double v : p.theta) x.push_back(std::log(v));
    for (double v : p.upsilon) x.push_back(std::log(v));
    return x;
}

ParamVector from_log(int dim, const Vec& x) {
    ParamVector p;
    const int na = dim + 1;
    const int nu = interior_count(dim);
    p.alpha.resize(na);
    p.theta.resize(na);
    p.upsilon.resize(nu);
    for (int i = 0; i < na; ++i) p.alpha[i] = std::exp(x[i]);
    for (int i = 0; i < na; ++i) p.theta[i] = std::exp(x[na + i]);
    for (int i = 0; i < nu; ++i) p.upsilon[i] = std::exp(x[2 * na + i]);
    return p;
}

double simplex_diameter(const std::vector<Vec>& pts) {
    double diam = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            double s = 0.0;
            for (size_t k = 0; k < pts[i].size(); ++k) {
                const double d = pts[i][k] - pts[j][k];
                s += d * d;
            }
            diam = std::max(diam, std::sqrt(s));
        }
    return diam;
}

} // namespace

OptimizeResult optimize(int dim, const ParamVector& p0, ObjectiveMode mode,
                        const OptimizeOptions& opts) {
    p0.validate(dim);
    OptimizeResult result;
    result.best = p0;

    const int na = dim + 1;
    const double lo = std::log(opts.alpha_min), hi = std::log(opts.alpha_max);

    auto eval = [&](const Vec& x) {
        if (result.evaluations >= opts.budget) return kInf;
        ++result.evaluations;
        // Density search box; the scales are unconstrained in log space.
        for (int i = 0; i < na; ++i)
            if (x[i] < lo || x[i] > hi) {
                result.trace.push_back(result.trace.empty() ? kInf : result.trace.back());
                return kInf;
            }
        const ParamVector p = from_log(dim, x);
        const double v = objective(dim, p, mode, opts.bases);
        const double prev_best = result.trace.empty() ? kInf : result.trace.back();
        if (v < prev_best) {
            result.best = p;
            result.best_value = v;
            result.trace.push_back(v);
        } else {
            result.trace.push_back(prev_best);
        }
        return v;
    };

    const Vec x0 = to_log(p0);
    const int n = static_cast<int>(x0.size());

    if (opts.budget <= 0) {
        result.best_value = objective(dim, p0, mode, opts.bases);
        return result;
    }

    // Standard Nelder-Mead with reflection 1, expansion 2, contraction
    // 0.5, shrink 0.5.
    std::vector<Vec> pts(n + 1, x0);
    Vec fval(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
    for (int i = 0; i <= n; ++i) fval[i] = eval(pts[i]);

    while (result.evaluations < opts.budget) {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fval[a] < fval[b]; });
        {
            std::vector<Vec> spts(n + 1);
            Vec sf(n + 1);
            for (int i = 0; i <= n; ++i) { spts[i] = pts[idx[i]]; sf[i] = fval[idx[i]]; }
            pts.swap(spts);
            fval.swap(sf);
        }
        if (simplex_diameter(pts) <= opts.diameter_tol) break;

        Vec centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;

        auto blend = [&](double t) {
            Vec x(n);
            for (int k = 0; k < n; ++k) x[k] = centroid[k] + t * (pts[n][k] - centroid[k]);
            return x;
        };

        const Vec xr = blend(-1.0);
        const double fr = eval(xr);
        if (fr < fval[0]) {
            const Vec xe = blend(-2.0);
            const double fe = eval(xe);
            if (fe < fr) { pts[n] = xe; fval[n] = fe; }
            else         { pts[n] = xr; fval[n] = fr; }
        } else if (fr < fval[n - 1]) {
            pts[n] = xr;
            fval[n] = fr;
        } else {
            const bool outside = fr < fval[n];
            const Vec xc = blend(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, fval[n])) {
                pts[n] = xc;
                fval[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int k = 0; k < n; ++k) pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
                    fval[i] = eval(pts[i]);
                }
            }
        }
    }

    if (!(result.best_value < kInf)) {
        // No feasible evaluation improved on the start; report p0 with its
        // own objective value.
        result.best = p0;
        result.best_value = objective(dim, p0, mode, opts.bases);
    }
    return result;
}

} // namespace histop
