#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "histop/mesh.hpp"

using namespace histop;

namespace {

// Conformity check: sorted faces must be shared by exactly 1 (boundary)
// or 2 (interior) tets.
bool conforming(const TetMesh& mesh) {
    std::map<std::array<int, 3>, int> faces;
    for (const auto& t : mesh.tets) {
        for (int drop = 0; drop < 4; ++drop) {
            std::array<int, 3> f{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != drop) f[k++] = t[i];
            std::sort(f.begin(), f.end());
            ++faces[f];
        }
    }
    for (const auto& [f, count] : faces) {
        (void)f;
        if (count != 1 && count != 2) return false;
    }
    return true;
}

double min_shape_ratio(const TetMesh& mesh) {
    double worst = std::numeric_limits<double>::infinity();
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const Simplex s = mesh.element(e);
        // inradius = 3V / total face area
        double area = 0.0;
        for (int j = 0; j < 4; ++j) area += s.face(j).volume();
        const double inradius = 3.0 * s.volume() / area;
        worst = std::min(worst, inradius / s.max_edge_length());
    }
    return worst;
}

} // namespace

TEST_CASE("uniform mesh counts, volume, and h") {
    const TetMesh m2 = uniform_mesh(2);
    CHECK(m2.vertices.size() == 8);
    CHECK(m2.tets.size() == 6);
    CHECK(m2.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m2.h == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    const TetMesh m5 = uniform_mesh(5);
    CHECK(m5.tets.size() == 6 * 64);
    CHECK(m5.vertices.size() == 125);
    CHECK(m5.total_volume() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m5.h == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));

    // Positive orientation after canonical ordering.
    for (int e = 0; e < m5.n_elements(); e += 37) CHECK(m5.element(e).volume() > 0.0);

    CHECK_THROWS_AS(uniform_mesh(1), ConfigError);
}

TEST_CASE("uniform mesh is conforming") {
    CHECK(conforming(uniform_mesh(2)));
    CHECK(conforming(uniform_mesh(4)));
}

TEST_CASE("quasi-uniform mesh: determinism, positivity, fixed boundary") {
    const TetMesh a = quasi_uniform_mesh(4, 0.2, 7);
    const TetMesh b = quasi_uniform_mesh(4, 0.2, 7);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (size_t i = 0; i < a.vertices.size(); ++i)
        for (int k = 0; k < 3; ++k) CHECK(a.vertices[i][k] == b.vertices[i][k]);

    for (int e = 0; e < a.n_elements(); ++e) CHECK(a.element(e).volume() > 0.0);

    // delta = 0 reproduces the uniform mesh.
    const TetMesh u = uniform_mesh(4);
    const TetMesh z = quasi_uniform_mesh(4, 0.0, 99);
    for (size_t i = 0; i < u.vertices.size(); ++i)
        for (int k = 0; k < 3; ++k) CHECK(z.vertices[i][k] == u.vertices[i][k]);

    // Boundary vertices stay put; interior displacements are bounded by
    // delta/(n-1).
    for (size_t i = 0; i < u.vertices.size(); ++i) {
        double dist2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double d = a.vertices[i][k] - u.vertices[i][k];
            dist2 += d * d;
        }
        bool boundary = false;
        for (int k = 0; k < 3; ++k)
            if (u.vertices[i][k] == 0.0 || u.vertices[i][k] == 1.0) boundary = true;
        if (boundary)
            CHECK(dist2 == 0.0);
        else
            CHECK(std::sqrt(dist2) <= 0.2 / 3.0 + 1e-15);
    }

    // Total volume is preserved (fixed connectivity, fixed boundary).
    CHECK(a.total_volume() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(conforming(a));

    CHECK_THROWS_AS(quasi_uniform_mesh(4, 0.3, 1), ConfigError);
}

TEST_CASE("shape regularity under perturbation") {
    const double uniform_ratio = min_shape_ratio(uniform_mesh(4));
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 11ull, 12345ull}) {
        const TetMesh m = quasi_uniform_mesh(4, 0.2, seed);
        CHECK(min_shape_ratio(m) >= 0.2 * uniform_ratio);
    }
}

TEST_CASE("mesh dump format") {
    const TetMesh m = uniform_mesh(2);
    const std::string text = m.dump();
    size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == m.vertices.size() + m.tets.size());
    CHECK(text.substr(0, 6) == "0 0 0\n");
}
