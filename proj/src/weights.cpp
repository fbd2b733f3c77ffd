#include "histop/weights.hpp"

#include <cmath>
#include <cstdio>

namespace histop {

WeightSpec WeightSpec::constant() { return WeightSpec{WeightKind::Constant, {}}; }

WeightSpec WeightSpec::affine(Vec alpha) {
    WeightSpec w{WeightKind::Affine, std::move(alpha)};
    w.validate(static_cast<int>(w.alpha.size()));
    return w;
}

WeightSpec WeightSpec::dirichlet(Vec alpha) {
    WeightSpec w{WeightKind::Dirichlet, std::move(alpha)};
    w.validate(static_cast<int>(w.alpha.size()));
    return w;
}

void WeightSpec::validate(int nvars) const {
    if (kind == WeightKind::Constant) return;
    if (static_cast<int>(alpha.size()) != nvars)
        throw ConfigError("WeightSpec: expected " + std::to_string(nvars) + " parameters");
    for (double a : alpha)
        if (!(a > 0.0)) throw ConfigError("WeightSpec: parameters must be strictly positive");
}

std::string WeightSpec::describe() const {
    std::string s;
    switch (kind) {
        case WeightKind::Constant: return "constant";
        case WeightKind::Affine: s = "affine:"; break;
        case WeightKind::Dirichlet: s = "dirichlet:"; break;
    }
    for (size_t i = 0; i < alpha.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", alpha[i]);
        if (i) s += ',';
        s += buf;
    }
    return s;
}

WeightSpec face_weight(const WeightSpec& w, int j) {
    if (w.kind == WeightKind::Constant) return WeightSpec::constant();
    if (j < 0 || j >= static_cast<int>(w.alpha.size()))
        throw GeometryError("face_weight: index out of range");
    Vec a;
    a.reserve(w.alpha.size() - 1);
    for (size_t i = 0; i < w.alpha.size(); ++i)
        if (static_cast<int>(i) != j) a.push_back(w.alpha[i]);
    return WeightSpec{w.kind, std::move(a)};
}

double density_times_volume(const WeightSpec& w, const Vec& lambda) {
    const int n = static_cast<int>(lambda.size());
    const int d = n - 1;
    switch (w.kind) {
        case WeightKind::Constant:
            return 1.0;
        case WeightKind::Affine: {
            w.validate(n);
            double num = 0.0, asum = 0.0;
            for (int i = 0; i < n; ++i) {
                num += w.alpha[i] * lambda[i];
                asum += w.alpha[i];
            }
            return (d + 1) * num / asum;
        }
        case WeightKind::Dirichlet: {
            w.validate(n);
            // C * |S| * prod lambda_i^{alpha_i - 1} with
            // C * |S| = Gamma(sum alpha) / (d! prod Gamma(alpha_i)).
            double asum = 0.0;
            for (double a : w.alpha) asum += a;
            double logc = std::lgamma(asum);
            for (double a : w.alpha) logc -= std::lgamma(a);
            for (int i = 2; i <= d; ++i) logc -= std::log(static_cast<double>(i));
            double logp = 0.0;
            for (int i = 0; i < n; ++i) {
                const double e = w.alpha[i] - 1.0;
                if (e == 0.0) continue;
                if (lambda[i] <= 0.0) {
                    if (e > 0.0) return 0.0;
                    throw IntegrabilityError("Dirichlet density singular at the boundary");
                }
                logp += e * std::log(lambda[i]);
            }
            return std::exp(logc + logp);
        }
    }
    throw Error("density_times_volume: unreachable");
}

} // namespace histop
