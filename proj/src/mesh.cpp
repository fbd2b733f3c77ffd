#include "histop/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace histop {

namespace {

double signed_volume(const Point& a, const Point& b, const Point& c, const Point& d) {
    double e[3][3];
    for (int i = 0; i < 3; ++i) {
        e[0][i] = b[i] - a[i];
        e[1][i] = c[i] - a[i];
        e[2][i] = d[i] - a[i];
    }
    const double det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                       e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                       e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
    return det / 6.0;
}

double min_signed_volume(const TetMesh& mesh) {
    double vmin = std::numeric_limits<double>::infinity();
    for (const auto& t : mesh.tets)
        vmin = std::min(vmin, signed_volume(mesh.vertices[t[0]], mesh.vertices[t[1]],
                                            mesh.vertices[t[2]], mesh.vertices[t[3]]));
    return vmin;
}

double max_diameter(const TetMesh& mesh) {
    double h = 0.0;
    for (const auto& t : mesh.tets)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) {
                    const double d = mesh.vertices[t[a]][k] - mesh.vertices[t[b]][k];
                    s += d * d;
                }
                h = std::max(h, std::sqrt(s));
            }
    return h;
}

} // namespace

Simplex TetMesh::element(int i) const {
    const auto& t = tets[i];
    return Simplex(3, {vertices[t[0]], vertices[t[1]], vertices[t[2]], vertices[t[3]]});
}

double TetMesh::total_volume() const {
    double v = 0.0;
    for (const auto& t : tets)
        v += signed_volume(vertices[t[0]], vertices[t[1]], vertices[t[2]], vertices[t[3]]);
    return v;
}

std::string TetMesh::dump() const {
    std::string out;
    char buf[128];
    for (const Point& v : vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
        out += buf;
    }
    for (const auto& t : tets) {
        std::snprintf(buf, sizeof buf, "%d %d %d %d\n", t[0], t[1], t[2], t[3]);
        out += buf;
    }
    return out;
}

TetMesh uniform_mesh(int n) {
    if (n < 2) throw ConfigError("uniform_mesh: need n >= 2");
    TetMesh mesh;
    const int m = n - 1;
    const double step = 1.0 / m;
    auto vid = [n](int i, int j, int k) { return i + n * (j + n * k); };

    mesh.vertices.reserve(static_cast<size_t>(n) * n * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) mesh.vertices.push_back({i * step, j * step, k * step});

    // Kuhn split: walk from the low cell corner to the high corner along
    // the 6 axis permutations; all tets are congruent.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    mesh.tets.reserve(static_cast<size_t>(6) * m * m * m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                for (const auto& p : perms) {
                    int c[3] = {i, j, k};
                    std::array<int, 4> tet{};
                    tet[0] = vid(c[0], c[1], c[2]);
                    for (int step_idx = 0; step_idx < 3; ++step_idx) {
                        ++c[p[step_idx]];
                        tet[step_idx + 1] = vid(c[0], c[1], c[2]);
                    }
                    if (signed_volume(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                                      mesh.vertices[tet[2]], mesh.vertices[tet[3]]) < 0.0)
                        std::swap(tet[2], tet[3]);
                    mesh.tets.push_back(tet);
                }
    mesh.h = max_diameter(mesh);
    return mesh;
}

TetMesh quasi_uniform_mesh(int n, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0 && delta <= 0.25))
        throw ConfigError("quasi_uniform_mesh: delta must lie in [0, 0.25]");
    TetMesh base = uniform_mesh(n);
    if (delta == 0.0) return base;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto interior = [&](const Point& v) {
        for (double c : v)
            if (c == 0.0 || c == 1.0) return false;
        return true;
    };

    double d = delta;
    while (d > 1e-4) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            TetMesh mesh = base;
            const double radius = d / (n - 1);
            for (Point& v : mesh.vertices) {
                if (!interior(v)) continue;
                double u[3];
                double r2;
                do {
                    for (double& x : u) x = unit(rng);
                    r2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
                } while (r2 > 1.0);
                for (int k = 0; k < 3; ++k) v[k] += radius * u[k];
            }
            if (min_signed_volume(mesh) > 0.0) {
                mesh.h = max_diameter(mesh);
                return mesh;
            }
        }
        d *= 0.5;
    }
    throw GeometryError("quasi_uniform_mesh: persistent element inversion");
}

} // namespace histop
