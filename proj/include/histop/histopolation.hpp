#pragma once

#include <string>
#include <vector>

#include "histop/mesh.hpp"
#include "histop/momentsystem.hpp"

namespace histop {

enum class Scheme { Linear, Quadratic };

std::string scheme_name(Scheme s);

/// Coefficients of one local reconstruction p = sum a_i lambda_i +
/// sum gamma_j psi_j + sum xi_k rho_k.
struct LocalSolution {
    int element = -1;
    Vec a;     // d+1 affine coefficients
    Vec gamma; // d+1 face-bubble coefficients
    Vec xi;    // d~ interior coefficients

    double eval(const BasisBundle& bundle, const Vec& lambda) const;
};

/// Two-stage elimination: H (xi; gamma) = (V-data; L-data), then
/// A a = I-data - I(quadratic part). Checks that every functional of the
/// reconstruction matches the prescribed data to 1e-9 relative.
LocalSolution solve_local_quadratic(const MomentSystem& sys, const DataVector& data);

/// Classical linear histopolation: A a = face averages.
Vec solve_local_linear(const MomentSystem& sys, const Vec& face_averages);

struct ErrorRow {
    int n = 0;
    double h = 0.0;
    Scheme scheme = Scheme::Linear;
    double error = 0.0;
    double order = 0.0; // empirical order vs the previous row; NaN on the first level
};

enum class MeshKind { Uniform, Quasi };

struct StudyConfig {
    WeightSpec weight = WeightSpec::constant();
    MeshKind mesh_kind = MeshKind::Uniform;
    double delta = 0.2;
    std::uint64_t seed = 1;
    int data_quad_pts = 5;  // per-axis points for the moment functionals
    int error_quad_pts = 6; // per-axis points for the L2 error
};

/// sqrt(sum_K int_K (f - p_K)^2) over the mesh.
double global_error(const TetMesh& mesh, const WeightSpec& w, const ScalarField& f,
                    Scheme scheme, const StudyConfig& cfg = {});

/// Errors and empirical orders over a sequence of mesh resolutions.
std::vector<ErrorRow> convergence_study(const ScalarField& f, const std::vector<int>& n_list,
                                        const std::vector<Scheme>& schemes,
                                        const StudyConfig& cfg);

/// The nine benchmark functions on [0,1]^3 (1-based ids).
ScalarField test_function(int id);
int test_function_count();

} // namespace histop
