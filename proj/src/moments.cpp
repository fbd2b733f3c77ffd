#include "histop/moments.hpp"

#include <cmath>

namespace histop {

namespace {

double log_mean_moment(const Vec& a) {
    const int d = static_cast<int>(a.size()) - 1;
    double sum = 0.0;
    double lg = 0.0;
    for (double ai : a) {
        if (!(ai > -1.0))
            throw IntegrabilityError("monomial moment: exponent must exceed -1");
        sum += ai;
        lg += std::lgamma(ai + 1.0);
    }
    double logfact = 0.0;
    for (int i = 2; i <= d; ++i) logfact += std::log(static_cast<double>(i));
    return logfact + lg - std::lgamma(d + 1.0 + sum);
}

} // namespace

double mean_monomial_moment(const Vec& exponents) {
    if (exponents.size() < 2)
        throw IntegrabilityError("monomial moment: need at least two barycentric variables");
    return std::exp(log_mean_moment(exponents));
}

double monomial_moment(const Simplex& s, const Vec& exponents) {
    if (static_cast<int>(exponents.size()) != s.dim() + 1)
        throw IntegrabilityError("monomial_moment: exponent arity mismatch");
    return s.volume() * mean_monomial_moment(exponents);
}

double weighted_integral(const WeightSpec& w, const BaryPoly& p) {
    const int n = p.nvars();
    const int d = n - 1;
    w.validate(n);
    switch (w.kind) {
        case WeightKind::Constant: {
            double sum = 0.0;
            Vec a(n);
            for (const auto& [e, c] : p.terms()) {
                for (int i = 0; i < n; ++i) a[i] = e[i];
                sum += c * mean_monomial_moment(a);
            }
            return sum;
        }
        case WeightKind::Affine: {
            // int p * (sum alpha_i lambda_i) / int (sum alpha_i lambda_i),
            // the denominator being sum(alpha) / (d+1).
            double num = 0.0, den = 0.0;
            Vec a(n);
            for (int i = 0; i < n; ++i) den += w.alpha[i];
            den /= (d + 1);
            for (const auto& [e, c] : p.terms()) {
                for (int i = 0; i < n; ++i) a[i] = e[i];
                for (int i = 0; i < n; ++i) {
                    a[i] += 1.0;
                    num += w.alpha[i] * c * mean_monomial_moment(a);
                    a[i] -= 1.0;
                }
            }
            return num / den;
        }
        case WeightKind::Dirichlet: {
            // Per-term ratio of Gamma products, evaluated in log space so
            // large parameters in the optimizer's search region cannot
            // overflow.
            Vec base(n);
            for (int i = 0; i < n; ++i) base[i] = w.alpha[i] - 1.0;
            const double log_den = log_mean_moment(base);
            double sum = 0.0;
            Vec a(n);
            for (const auto& [e, c] : p.terms()) {
                for (int i = 0; i < n; ++i) a[i] = base[i] + e[i];
                sum += c * std::exp(log_mean_moment(a) - log_den);
            }
            return sum;
        }
    }
    throw Error("weighted_integral: unreachable");
}

double inner_product_volume(const Simplex& s, const WeightSpec& w, const BaryPoly& p,
                            const BaryPoly& q) {
    if (p.nvars() != s.dim() + 1 || q.nvars() != s.dim() + 1)
        throw Error("inner_product_volume: arity mismatch");
    return weighted_integral(w, p * q);
}

double inner_product_face(const Simplex& s, const WeightSpec& w, int j, const BaryPoly& p,
                          const BaryPoly& q) {
    if (j < 0 || j > s.dim()) throw GeometryError("inner_product_face: index out of range");
    if (p.nvars() != s.dim() || q.nvars() != s.dim())
        throw Error("inner_product_face: arity mismatch");
    return weighted_integral(face_weight(w, j), p * q);
}

double weighted_norm(const WeightSpec& w, const BaryPoly& p) {
    return std::sqrt(std::max(weighted_integral(w, p * p), 0.0));
}

FunctionalEvaluator::FunctionalEvaluator(int dim, const WeightSpec& w,
                                         std::span<const BaryPoly> face_q,
                                         std::span<const BaryPoly> rho, int npts)
    : dim_(dim) {
    w.validate(dim + 1);
    if (w.kind == WeightKind::Dirichlet)
        for (double a : w.alpha)
            if (a < 1.0)
                throw IntegrabilityError(
                    "functional data: Dirichlet alpha < 1 gives a singular density; "
                    "plain quadrature refused");
    if (static_cast<int>(face_q.size()) != dim + 1)
        throw Error("FunctionalEvaluator: expected d+1 face polynomials");

    const BaryQuadRule face_rule = simplex_rule_barycentric(dim - 1, npts);
    faces_.resize(dim + 1);
    for (int j = 0; j <= dim; ++j) {
        const WeightSpec fw = face_weight(w, j);
        FaceTable& t = faces_[j];
        t.bary = face_rule.points;
        t.wdens.resize(t.bary.size());
        t.qvals.resize(t.bary.size());
        for (size_t q = 0; q < t.bary.size(); ++q) {
            t.wdens[q] = face_rule.weights[q] * density_times_volume(fw, t.bary[q]);
            t.qvals[q] = face_q[j].eval(t.bary[q]);
        }
    }

    const BaryQuadRule vol_rule = simplex_rule_barycentric(dim, npts);
    volume_.bary = vol_rule.points;
    volume_.wdens.resize(volume_.bary.size());
    for (size_t q = 0; q < volume_.bary.size(); ++q)
        volume_.wdens[q] = vol_rule.weights[q] * density_times_volume(w, volume_.bary[q]);
    volume_.rhovals.resize(rho.size());
    for (size_t k = 0; k < rho.size(); ++k) {
        volume_.rhovals[k].resize(volume_.bary.size());
        for (size_t q = 0; q < volume_.bary.size(); ++q)
            volume_.rhovals[k][q] = rho[k].eval(volume_.bary[q]);
    }
}

DataVector FunctionalEvaluator::evaluate(const Simplex& s, const ScalarField& f) const {
    if (s.dim() != dim_) throw GeometryError("FunctionalEvaluator: simplex dimension mismatch");
    DataVector data;
    data.face_avg.assign(dim_ + 1, 0.0);
    data.face_quad.assign(dim_ + 1, 0.0);
    data.interior.assign(volume_.rhovals.size(), 0.0);

    for (int j = 0; j <= dim_; ++j) {
        const Simplex fj = s.face(j);
        const FaceTable& t = faces_[j];
        for (size_t q = 0; q < t.bary.size(); ++q) {
            const double fv = f(fj.point_from_barycentric(t.bary[q]));
            data.face_avg[j] += t.wdens[q] * fv;
            data.face_quad[j] += t.wdens[q] * t.qvals[q] * fv;
        }
    }
    for (size_t q = 0; q < volume_.bary.size(); ++q) {
        const double fv = f(s.point_from_barycentric(volume_.bary[q]));
        const double wd = volume_.wdens[q] * fv;
        for (size_t k = 0; k < volume_.rhovals.size(); ++k)
            data.interior[k] += wd * volume_.rhovals[k][q];
    }
    return data;
}

DataVector functional_data(const Simplex& s, const WeightSpec& w,
                           std::span<const BaryPoly> face_q, std::span<const BaryPoly> rho,
                           const ScalarField& f, int npts) {
    return FunctionalEvaluator(s.dim(), w, face_q, rho, npts).evaluate(s, f);
}

} // namespace histop
