#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "histop/geometry.hpp"

namespace histop {

/// Tetrahedral mesh of the unit cube.
struct TetMesh {
    std::vector<Point> vertices;
    std::vector<std::array<int, 4>> tets;
    double h = 0.0; // max element diameter

    Simplex element(int i) const;
    int n_elements() const { return static_cast<int>(tets.size()); }
    double total_volume() const;

    /// One line per vertex (3 floats), then one line per tet (4 vertex
    /// indices, 0-based).
    std::string dump() const;
};

/// Kuhn split of an (n-1)^3 Cartesian grid: 6 congruent tetrahedra per
/// cell, 6(n-1)^3 in total, h = sqrt(3)/(n-1).
TetMesh uniform_mesh(int n);

/// Uniform mesh with interior vertices displaced by random vectors of
/// magnitude at most delta/(n-1); connectivity is kept fixed and boundary
/// vertices stay put. Element inversions trigger resampling (10 tries),
/// then delta shrinks; persistent inversion is an error.
TetMesh quasi_uniform_mesh(int n, double delta, std::uint64_t seed);

} // namespace histop
