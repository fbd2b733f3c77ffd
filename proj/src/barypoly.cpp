#include "histop/barypoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace histop {

namespace {
constexpr double kRelativePruneTol = 1e-15;
}

BaryPoly::BaryPoly(int nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (static_cast<int>(e.size()) != nvars_)
            throw Error("BaryPoly: exponent arity mismatch");
    }
    prune();
}

BaryPoly BaryPoly::constant(int nvars, double c) {
    BaryPoly p(nvars);
    if (c != 0.0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
}

BaryPoly BaryPoly::lambda(int nvars, int i) {
    if (i < 0 || i >= nvars) throw Error("BaryPoly::lambda: index out of range");
    BaryPoly p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.terms_[e] = 1.0;
    return p;
}

BaryPoly BaryPoly::monomial(int nvars, Exponents e, double c) {
    if (static_cast<int>(e.size()) != nvars) throw Error("BaryPoly::monomial: arity mismatch");
    BaryPoly p(nvars);
    if (c != 0.0) p.terms_[std::move(e)] = c;
    return p;
}

int BaryPoly::degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        (void)c;
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    }
    return deg;
}

double BaryPoly::coefficient(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

double BaryPoly::eval(const Vec& lambda) const {
    if (static_cast<int>(lambda.size()) != nvars_)
        throw Error("BaryPoly::eval: arity mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= lambda[i];
        sum += term;
    }
    return sum;
}

BaryPoly BaryPoly::operator+(const BaryPoly& o) const {
    BaryPoly r = *this;
    return r += o;
}

BaryPoly BaryPoly::operator-(const BaryPoly& o) const {
    BaryPoly r = *this;
    return r -= o;
}

BaryPoly& BaryPoly::operator+=(const BaryPoly& o) {
    if (nvars_ != o.nvars_) throw Error("BaryPoly +: arity mismatch");
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    prune();
    return *this;
}

BaryPoly& BaryPoly::operator-=(const BaryPoly& o) {
    if (nvars_ != o.nvars_) throw Error("BaryPoly -: arity mismatch");
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    prune();
    return *this;
}

BaryPoly BaryPoly::operator*(const BaryPoly& o) const {
    if (nvars_ != o.nvars_) throw Error("BaryPoly *: arity mismatch");
    BaryPoly r(nvars_);
    Exponents e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.terms_[e] += ca * cb;
        }
    r.prune();
    return r;
}

BaryPoly BaryPoly::operator*(double s) const {
    BaryPoly r(nvars_);
    if (s == 0.0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
    r.prune();
    return r;
}

BaryPoly BaryPoly::restrict_to_face(int j) const {
    if (j < 0 || j >= nvars_) throw Error("restrict_to_face: index out of range");
    BaryPoly r(nvars_ - 1);
    Exponents fe(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        if (e[j] > 0) continue; // lambda_j = 0 on F_j
        int k = 0;
        for (int i = 0; i < nvars_; ++i)
            if (i != j) fe[k++] = e[i];
        r.terms_[fe] += c;
    }
    r.prune();
    return r;
}

BaryPoly BaryPoly::homogenized(int target_degree) const {
    BaryPoly sum_lambda(nvars_);
    for (int i = 0; i < nvars_; ++i) sum_lambda += BaryPoly::lambda(nvars_, i);
    BaryPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        const int deg = std::accumulate(e.begin(), e.end(), 0);
        if (deg > target_degree)
            throw Error("homogenized: term degree exceeds the target");
        BaryPoly term = BaryPoly::monomial(nvars_, e, c);
        for (int k = deg; k < target_degree; ++k) term = term * sum_lambda;
        out += term;
    }
    return out;
}

double BaryPoly::max_coeff_distance(const BaryPoly& o) const {
    if (nvars_ != o.nvars_) throw Error("max_coeff_distance: arity mismatch");
    double dist = 0.0;
    for (const auto& [e, c] : terms_) dist = std::max(dist, std::abs(c - o.coefficient(e)));
    for (const auto& [e, c] : o.terms_) dist = std::max(dist, std::abs(c - coefficient(e)));
    return dist;
}

void BaryPoly::prune() {
    double cmax = 0.0;
    for (const auto& [e, c] : terms_) {
        (void)e;
        cmax = std::max(cmax, std::abs(c));
    }
    const double tol = kRelativePruneTol * cmax;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= tol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

} // namespace histop
