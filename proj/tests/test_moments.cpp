#include <doctest.h>

#include <cmath>
#include <random>

#include "histop/moments.hpp"

using namespace histop;

namespace {

std::mt19937_64 rng(4711);

// Composite Simpson, exact for cubics; the small-degree monomial oracles
// below therefore carry no discretization error.
double simpson(const std::function<double(double)>& f, double a, double b, int n = 64) {
    double s = f(a) + f(b);
    const double h = (b - a) / (2 * n);
    for (int i = 1; i < 2 * n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Iterated-integral oracle for int over the unit triangle of x^p y^q.
double triangle_monomial_oracle(int p, int q) {
    return simpson(
        [&](double x) {
            return simpson([&](double y) { return std::pow(x, p) * std::pow(y, q); }, 0.0,
                           1.0 - x);
        },
        0.0, 1.0, 256);
}

} // namespace

TEST_CASE("monomial moments against independent integral oracles") {
    // d=1: int_0^1 t(1-t) dt, Simpson (exact for quadratics).
    const double oracle1 = simpson([](double t) { return t * (1.0 - t); }, 0.0, 1.0);
    const Simplex interval(1, {{0.0}, {1.0}});
    CHECK(monomial_moment(interval, {1.0, 1.0}) == doctest::Approx(oracle1).epsilon(1e-12));
    CHECK(oracle1 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    // d=3, all exponents zero -> volume.
    const Simplex tet = Simplex::reference(3);
    CHECK(monomial_moment(tet, {0, 0, 0, 0}) == doctest::Approx(tet.volume()).epsilon(1e-14));

    // d=2: lambda_1 lambda_2 = x*y on the unit triangle.
    const Simplex tri = Simplex::reference(2);
    const double oracle2 = triangle_monomial_oracle(1, 1);
    CHECK(monomial_moment(tri, {1.0, 1.0, 0.0}) == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
    // lambda_0 = 1-x-y, exponents (1,1,0) means lambda_0^1 lambda_1^1:
    // that's (1-x-y)*x; the (0,1,1) case is x*y.
    CHECK(monomial_moment(tri, {0.0, 1.0, 1.0}) == doctest::Approx(oracle2).epsilon(1e-12));

    CHECK_THROWS_AS(monomial_moment(tet, {-1.0, 0, 0, 0}), IntegrabilityError);
}

TEST_CASE("normalization: <1,1> = 1 for every weight family") {
    const Simplex tet = Simplex::reference(3);
    const BaryPoly one = BaryPoly::constant(4, 1.0);
    for (const WeightSpec& w :
         {WeightSpec::constant(), WeightSpec::affine({1.0, 2.0, 3.0, 0.5}),
          WeightSpec::dirichlet({0.7, 1.3, 2.2, 4.0})})
        CHECK(inner_product_volume(tet, w, one, one) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("constant-weight first moment on the tetrahedron") {
    const Simplex tet = Simplex::reference(3);
    const BaryPoly one = BaryPoly::constant(4, 1.0);
    CHECK(inner_product_volume(tet, WeightSpec::constant(), BaryPoly::lambda(4, 0), one) ==
          doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("closed-form interior polynomial is orthogonal to constants (d=3, alpha=1)") {
    const Simplex tet = Simplex::reference(3);
    const WeightSpec w = WeightSpec::dirichlet({1, 1, 1, 1});
    BaryPoly p = BaryPoly::lambda(4, 1) * BaryPoly::lambda(4, 2);
    p -= (1.0 / 6.0) * (BaryPoly::lambda(4, 1) + BaryPoly::lambda(4, 2));
    p += BaryPoly::constant(4, 1.0 / 30.0);
    CHECK(inner_product_volume(tet, w, p, BaryPoly::constant(4, 1.0)) ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("face inner products") {
    const Simplex tri = Simplex::reference(2);
    const WeightSpec cw = WeightSpec::constant();
    const BaryPoly one = BaryPoly::constant(2, 1.0);
    CHECK(inner_product_face(tri, cw, 0, one, one) == doctest::Approx(1.0).epsilon(1e-14));

    // <mu_0 mu_1, 6 mu_0^2 - 6 mu_0 + 1> under the uniform edge density.
    const BaryPoly mu0 = BaryPoly::lambda(2, 0), mu1 = BaryPoly::lambda(2, 1);
    const BaryPoly q = 6.0 * (mu0 * mu0) - 6.0 * mu0 + BaryPoly::constant(2, 1.0);
    CHECK(inner_product_face(tri, cw, 0, mu0 * mu1, q) ==
          doctest::Approx(-1.0 / 30.0).epsilon(1e-12));

    // Dirichlet d=3, alpha=(2,1,1,1), j=0: induced (1,1,1) on the triangle.
    const Simplex tet = Simplex::reference(3);
    const WeightSpec dw = WeightSpec::dirichlet({2, 1, 1, 1});
    const BaryPoly fone = BaryPoly::constant(3, 1.0);
    CHECK(inner_product_face(tet, dw, 0, BaryPoly::lambda(3, 0), fone) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("Dirichlet face closure is exact") {
    const WeightSpec w = WeightSpec::dirichlet({0.9, 1.7, 3.1, 2.4});
    const WeightSpec f1 = face_weight(w, 1);
    REQUIRE(f1.kind == WeightKind::Dirichlet);
    REQUIRE(f1.alpha.size() == 3);
    CHECK(f1.alpha[0] == 0.9);
    CHECK(f1.alpha[1] == 3.1);
    CHECK(f1.alpha[2] == 2.4);
}

TEST_CASE("weights and face densities have unit mass") {
    const BaryPoly one4 = BaryPoly::constant(4, 1.0);
    const BaryPoly one3 = BaryPoly::constant(3, 1.0);
    for (const WeightSpec& w :
         {WeightSpec::constant(), WeightSpec::affine({2.0, 1.0, 0.5, 3.0}),
          WeightSpec::dirichlet({2.0, 3.5, 1.0, 4.2})}) {
        CHECK(weighted_integral(w, one4) == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = 0; j < 4; ++j)
            CHECK(weighted_integral(face_weight(w, j), one3) ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("pointwise densities integrate to one under quadrature") {
    // Integer Dirichlet parameters keep the density polynomial, so the
    // rule is exact; fractional parameters converge but are not exact.
    const BaryQuadRule rule = simplex_rule_barycentric(3, 6);
    for (const WeightSpec& w :
         {WeightSpec::constant(), WeightSpec::affine({2.0, 1.0, 0.5, 3.0}),
          WeightSpec::dirichlet({2.0, 4.0, 1.0, 3.0})}) {
        double mass = 0.0;
        for (size_t qp = 0; qp < rule.points.size(); ++qp)
            mass += rule.weights[qp] * density_times_volume(w, rule.points[qp]);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("simplex quadrature: weight sums, exactness, affine scaling") {
    const Simplex tet = Simplex::reference(3);

    const QuadRule r1 = quad_rule_simplex(tet, 1);
    CHECK(r1.points.size() == 1);
    CHECK(r1.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));

    // npts = 3 integrates lambda_0^2 lambda_1^2 lambda_2 exactly.
    const QuadRule r3 = quad_rule_simplex(tet, 3);
    double acc = 0.0;
    for (size_t qp = 0; qp < r3.points.size(); ++qp) {
        const Vec lam = tet.barycentric_coords(r3.points[qp]);
        acc += r3.weights[qp] * lam[0] * lam[0] * lam[1] * lam[1] * lam[2];
    }
    CHECK(acc == doctest::Approx(monomial_moment(tet, {2, 2, 1, 0})).epsilon(1e-13));

    // Affine image: weights scale by |det| (volume ratio).
    std::vector<Point> v;
    for (int i = 0; i < 4; ++i) {
        Point p = tet.vertex(i);
        for (double& x : p) x = 3.0 * x + 1.0;
        v.push_back(p);
    }
    const Simplex big(3, v);
    const QuadRule rs = quad_rule_simplex(big, 2);
    double w_small = 0.0, w_big = 0.0;
    for (double w : quad_rule_simplex(tet, 2).weights) w_small += w;
    for (double w : rs.weights) w_big += w;
    CHECK(w_big == doctest::Approx(27.0 * w_small).epsilon(1e-12));
}

TEST_CASE("quadrature matches closed-form moments for all monomials up to degree 4") {
    const Simplex tet = Simplex::reference(3);
    for (int npts = 3; npts <= 5; ++npts) {
        const BaryQuadRule rule = simplex_rule_barycentric(3, npts);
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; a + b <= 4; ++b)
                for (int c = 0; a + b + c <= 4; ++c)
                    for (int e = 0; a + b + c + e <= 4; ++e) {
                        double acc = 0.0;
                        for (size_t qp = 0; qp < rule.points.size(); ++qp) {
                            const Vec& l = rule.points[qp];
                            acc += rule.weights[qp] * std::pow(l[0], a) * std::pow(l[1], b) *
                                   std::pow(l[2], c) * std::pow(l[3], e);
                        }
                        const double exact = mean_monomial_moment(
                            {double(a), double(b), double(c), double(e)});
                        CHECK(std::abs(acc - exact) <= 1e-12 * std::abs(exact));
                    }
    }
}

TEST_CASE("functional data on trivial inputs") {
    const Simplex tet = Simplex::reference(3);
    const WeightSpec w = WeightSpec::dirichlet({2, 1, 1, 3});

    // Orthogonality of q/rho to P1 is irrelevant for this check; plain
    // pair products will do.
    std::vector<BaryPoly> qpolys, rho;
    for (int j = 0; j < 4; ++j)
        qpolys.push_back(BaryPoly::lambda(3, 0) * BaryPoly::lambda(3, 1));
    rho.push_back(BaryPoly::lambda(4, 0) * BaryPoly::lambda(4, 2));

    const DataVector data =
        functional_data(tet, w, qpolys, rho, [](const Point&) { return 1.0; }, 5);
    for (double v : data.face_avg) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    // I_j of f = lambda_1 lambda_2 matches the closed-form inner product.
    const BaryPoly f12 = BaryPoly::lambda(4, 1) * BaryPoly::lambda(4, 2);
    const DataVector d2 = functional_data(
        tet, WeightSpec::constant(), qpolys, rho,
        [&](const Point& x) {
            const Vec lam = Simplex::reference(3).barycentric_coords(x);
            return f12.eval(lam);
        },
        5);
    for (int j = 0; j < 4; ++j) {
        const BaryPoly fr = f12.restrict_to_face(j);
        const double exact =
            weighted_integral(face_weight(WeightSpec::constant(), j), fr);
        CHECK(d2.face_avg[j] == doctest::Approx(exact).epsilon(1e-12));
        const double exact_l = weighted_integral(face_weight(WeightSpec::constant(), j),
                                                 fr * qpolys[j]);
        CHECK(d2.face_quad[j] == doctest::Approx(exact_l).epsilon(1e-12));
    }
    const double exact_v = weighted_integral(WeightSpec::constant(), f12 * rho[0]);
    CHECK(d2.interior[0] == doctest::Approx(exact_v).epsilon(1e-12));
}

TEST_CASE("functional data refuses singular Dirichlet densities") {
    const Simplex tet = Simplex::reference(3);
    std::vector<BaryPoly> qpolys(4, BaryPoly::lambda(3, 0)), rho;
    CHECK_THROWS_AS(functional_data(tet, WeightSpec::dirichlet({0.5, 1, 1, 1}), qpolys, rho,
                                    [](const Point&) { return 1.0; }),
                    IntegrabilityError);
}
