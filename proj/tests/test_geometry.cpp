#include <doctest.h>

#include <cmath>
#include <random>

#include "histop/geometry.hpp"

using namespace histop;

namespace {

std::mt19937_64 rng(2024);

// Random tetrahedron with a nondegeneracy margin, by perturbing the
// reference vertices.
Simplex random_tet() {
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (;;) {
        std::vector<Point> v(4, Point(3));
        const Simplex ref = Simplex::reference(3);
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 3; ++k) v[i][k] = ref.vertex(i)[k] + u(rng);
        try {
            Simplex s(3, v);
            if (s.volume() > 0.02) return s;
        } catch (const GeometryError&) {
        }
    }
}

} // namespace

TEST_CASE("barycentric coordinates at vertices and centroid") {
    const Simplex tet = Simplex::reference(3);
    const Vec at_v2 = tet.barycentric_coords(tet.vertex(2));
    for (int i = 0; i < 4; ++i)
        CHECK(at_v2[i] == doctest::Approx(i == 2 ? 1.0 : 0.0).epsilon(1e-13));

    Point centroid(3, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 3; ++k) centroid[k] += tet.vertex(i)[k] / 4.0;
    const Vec lc = tet.barycentric_coords(centroid);
    for (int i = 0; i < 4; ++i) CHECK(lc[i] == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("barycentric coordinates recover a prescribed combination") {
    const Simplex tet = random_tet();
    const Vec want = {0.2, 0.3, 0.1, 0.4};
    const Point x = tet.point_from_barycentric(want);
    const Vec got = tet.barycentric_coords(x);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));

    // Independent oracle: solve the (d+1)x(d+1) system
    // [1 ... 1; v_0 ... v_d] lambda = [1; x] directly.
    Mat sys(4, 4);
    Vec rhs(4);
    rhs[0] = 1.0;
    for (int i = 0; i < 4; ++i) sys(0, i) = 1.0;
    for (int k = 0; k < 3; ++k) {
        rhs[k + 1] = x[k];
        for (int i = 0; i < 4; ++i) sys(k + 1, i) = tet.vertex(i)[k];
    }
    const Vec oracle = lu_solve(sys, rhs);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(oracle[i]).epsilon(1e-11));
}

TEST_CASE("barycentric partition of unity inside the simplex") {
    const Simplex tet = random_tet();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec lam(4);
        double s = 0.0;
        for (double& v : lam) s += (v = -std::log(u(rng)));
        for (double& v : lam) v /= s;
        const Vec got = tet.barycentric_coords(tet.point_from_barycentric(lam));
        double sum = 0.0;
        double lmin = 1.0;
        for (double v : got) {
            sum += v;
            lmin = std::min(lmin, v);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(lmin >= -1e-12);
    }
}

TEST_CASE("volumes of reference simplices and scaling") {
    CHECK(Simplex::reference(3).volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(Simplex::reference(2).volume() == doctest::Approx(0.5).epsilon(1e-14));

    const double c = 2.5;
    std::vector<Point> v;
    for (int i = 0; i < 4; ++i) {
        Point p = Simplex::reference(3).vertex(i);
        for (double& x : p) x *= c;
        v.push_back(p);
    }
    CHECK(Simplex(3, v).volume() == doctest::Approx(c * c * c / 6.0).epsilon(1e-13));
}

TEST_CASE("degenerate simplex is rejected") {
    CHECK_THROWS_AS(Simplex(2, {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}), GeometryError);
}

TEST_CASE("faces: vertex order, area, restriction identity") {
    const Simplex tet = Simplex::reference(3);
    const Simplex f0 = tet.face(0);
    CHECK(f0.dim() == 2);
    CHECK(f0.vertex(0) == tet.vertex(1));
    CHECK(f0.vertex(1) == tet.vertex(2));
    CHECK(f0.vertex(2) == tet.vertex(3));

    const Simplex f3 = tet.face(3);
    CHECK(f3.volume() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS(tet.face(4), GeometryError);

    // Face area against the cross-product formula on a random tet.
    const Simplex t = random_tet();
    const Simplex f = t.face(1);
    const Point &a = f.vertex(0), &b = f.vertex(1), &c = f.vertex(2);
    Point ab(3), ac(3);
    for (int k = 0; k < 3; ++k) {
        ab[k] = b[k] - a[k];
        ac[k] = c[k] - a[k];
    }
    const double cx = ab[1] * ac[2] - ab[2] * ac[1];
    const double cy = ab[2] * ac[0] - ab[0] * ac[2];
    const double cz = ab[0] * ac[1] - ab[1] * ac[0];
    const double area = 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
    CHECK(f.volume() == doctest::Approx(area).epsilon(1e-12));

    // lambda_j vanishes identically on face j.
    for (int j = 0; j < 4; ++j) {
        const Simplex fj = t.face(j);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            Vec mu(3);
            double s = 0.0;
            for (double& v : mu) s += (v = u(rng) + 1e-3);
            for (double& v : mu) v /= s;
            const Vec lam = t.barycentric_coords(fj.point_from_barycentric(mu));
            CHECK(std::abs(lam[j]) <= 1e-12);
        }
    }
}

TEST_CASE("affine map between simplices") {
    const Simplex ref = Simplex::reference(3);

    const AffineMap ident = affine_map_between(ref, ref);
    CHECK(frobenius_norm(ident.matrix - Mat::identity(3)) <= 1e-13);
    for (double o : ident.offset) CHECK(std::abs(o) <= 1e-14);

    std::vector<Point> shifted;
    for (int i = 0; i < 4; ++i) {
        Point p = ref.vertex(i);
        p[0] += 1.0;
        p[1] -= 2.0;
        p[2] += 0.5;
        shifted.push_back(p);
    }
    const AffineMap tr = affine_map_between(ref, Simplex(3, shifted));
    CHECK(frobenius_norm(tr.matrix - Mat::identity(3)) <= 1e-13);
    CHECK(tr.offset[0] == doctest::Approx(1.0));
    CHECK(tr.offset[1] == doctest::Approx(-2.0));
    CHECK(tr.offset[2] == doctest::Approx(0.5));

    const Simplex a = random_tet(), b = random_tet();
    const AffineMap phi = affine_map_between(a, b);
    for (int i = 0; i < 4; ++i) {
        const Point got = phi.apply(a.vertex(i));
        for (int k = 0; k < 3; ++k)
            CHECK(got[k] == doctest::Approx(b.vertex(i)[k]).epsilon(1e-12));
    }

    // Barycentric invariance at random points.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec lam(4);
        double s = 0.0;
        for (double& v : lam) s += (v = u(rng) + 1e-3);
        for (double& v : lam) v /= s;
        const Point x = a.point_from_barycentric(lam);
        const Vec lam_dst = b.barycentric_coords(phi.apply(x));
        for (int i = 0; i < 4; ++i)
            CHECK(lam_dst[i] == doctest::Approx(lam[i]).epsilon(1e-10));
    }
}
