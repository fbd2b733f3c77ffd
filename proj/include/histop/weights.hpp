#pragma once

#include <string>
#include <vector>

#include "histop/errors.hpp"
#include "histop/linalg.hpp"

namespace histop {

enum class WeightKind { Constant, Affine, Dirichlet };

/// Probability density on a simplex. All three families are closed under
/// restriction to faces, which is what makes the face densities omega_j
/// computable in closed form.
struct WeightSpec {
    WeightKind kind = WeightKind::Constant;
    Vec alpha; // d+1 positive parameters; ignored for Constant

    static WeightSpec constant();
    static WeightSpec affine(Vec alpha);
    static WeightSpec dirichlet(Vec alpha);

    /// Check parameter positivity against the given variable count
    /// (Constant accepts any nvars).
    void validate(int nvars) const;

    std::string describe() const;
};

/// Induced density on face j: the normalized conditional trace of the
/// parent weight. For all three families this is the same family with the
/// j-th parameter dropped (increasing-i order).
WeightSpec face_weight(const WeightSpec& w, int j);

/// Density value times simplex volume at barycentric point lambda, i.e.
/// Omega(x) * |S|. Volume-free because the normalized densities only
/// depend on barycentric coordinates. Dirichlet parameters below 1 give a
/// singular density; evaluation at boundary points then throws.
double density_times_volume(const WeightSpec& w, const Vec& lambda);

} // namespace histop
