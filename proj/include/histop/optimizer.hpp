#pragma once

#include <vector>

#include "histop/momentsystem.hpp"

namespace histop {

/// Full parameter vector p = (alpha, theta, upsilon): Dirichlet density
/// parameters plus face/interior moment scales, all strictly positive.
/// Searched in log space.
struct ParamVector {
    Vec alpha;   // d+1
    Vec theta;   // d+1
    Vec upsilon; // d~

    static ParamVector ones(int dim);
    void validate(int dim) const;
};

enum class ObjectiveMode { MaxBeta, MinKappa };

/// Bases used when rebuilding the system per parameter point. Raw keeps
/// the explicit construction (beta varies with alpha); Canonical applies
/// the orthonormal split, pinning beta at 1 and leaving only the
/// conditioning objective meaningful.
enum class BasisMode { Raw, Canonical };

/// Diagnostics of one parameter point.
struct ObjectiveInfo {
    double beta = 0.0;
    double kappa2 = 0.0; // of the scaled quadratic moment matrix
    bool unisolvent = false;
};

/// Rebuild the Dirichlet density, bases, blocks and the reduced operator
/// on the reference simplex, then evaluate. Returns -beta for MaxBeta and
/// kappa2(Htilde) for MinKappa (minimization convention); non-unisolvent
/// parameters evaluate to +infinity.
double objective(int dim, const ParamVector& p, ObjectiveMode mode,
                 BasisMode bases = BasisMode::Raw);

ObjectiveInfo objective_info(int dim, const ParamVector& p, BasisMode bases = BasisMode::Raw);

struct OptimizeResult {
    ParamVector best;
    double best_value = 0.0;
    std::vector<double> trace; // best-so-far objective per evaluation
    int evaluations = 0;
};

struct OptimizeOptions {
    int budget = 200;           // objective evaluations
    double initial_step = 0.25; // log-space simplex edge
    double diameter_tol = 1e-6; // log-space termination diameter
    double alpha_min = 0.75;    // density search box
    double alpha_max = 8.0;
    BasisMode bases = BasisMode::Raw;
};

/// Nelder-Mead in log-parameter space; positivity holds by construction
/// and the best-so-far trace is monotone. The returned point is never
/// worse than p0.
OptimizeResult optimize(int dim, const ParamVector& p0, ObjectiveMode mode,
                        const OptimizeOptions& opts = {});

} // namespace histop
