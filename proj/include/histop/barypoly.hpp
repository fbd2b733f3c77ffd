#pragma once

#include <map>
#include <vector>

#include "histop/errors.hpp"
#include "histop/linalg.hpp"

namespace histop {

/// Polynomial in barycentric coordinates lambda_0..lambda_d, stored as a
/// map from exponent multi-index to coefficient. The representation is
/// deliberately not reduced modulo sum(lambda) = 1: every consumer is an
/// integral or a pointwise evaluation, and the closed-form Dirichlet
/// formulas are stated in this unreduced form.
class BaryPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, double>;

    explicit BaryPoly(int nvars) : nvars_(nvars) {}
    BaryPoly(int nvars, TermMap terms);

    static BaryPoly zero(int nvars) { return BaryPoly(nvars); }
    static BaryPoly constant(int nvars, double c);
    /// The coordinate polynomial lambda_i.
    static BaryPoly lambda(int nvars, int i);
    static BaryPoly monomial(int nvars, Exponents e, double c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    double coefficient(const Exponents& e) const;

    double eval(const Vec& lambda) const;

    BaryPoly operator+(const BaryPoly& o) const;
    BaryPoly operator-(const BaryPoly& o) const;
    BaryPoly operator*(const BaryPoly& o) const;
    BaryPoly operator*(double s) const;

    BaryPoly& operator+=(const BaryPoly& o);
    BaryPoly& operator-=(const BaryPoly& o);

    /// Substitute lambda_j = 0 and reindex the remaining variables to the
    /// face barycentrics mu_{j,i} in increasing-i order. Result has one
    /// variable fewer.
    BaryPoly restrict_to_face(int j) const;

    /// Multiply every term by (sum lambda)^(target - term degree). Since
    /// sum lambda = 1 on the simplex this does not change the function,
    /// but it makes the representation canonical: two polynomials of
    /// degree <= target agree on the simplex iff their homogenizations
    /// have equal term maps.
    BaryPoly homogenized(int target_degree) const;

    /// Max |coefficient| difference against another polynomial.
    double max_coeff_distance(const BaryPoly& o) const;

private:
    void prune();

    int nvars_;
    TermMap terms_;
};

inline BaryPoly operator*(double s, const BaryPoly& p) { return p * s; }

} // namespace histop
