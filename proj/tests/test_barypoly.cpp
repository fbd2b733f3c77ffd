#include <doctest.h>

#include <random>

#include "histop/barypoly.hpp"

using namespace histop;

namespace {

std::mt19937_64 rng(99);

BaryPoly random_quadratic(int nvars) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BaryPoly p(nvars);
    for (int i = 0; i < nvars; ++i) {
        p += u(rng) * BaryPoly::lambda(nvars, i);
        for (int j = i; j < nvars; ++j)
            p += u(rng) * (BaryPoly::lambda(nvars, i) * BaryPoly::lambda(nvars, j));
    }
    p += BaryPoly::constant(nvars, u(rng));
    return p;
}

Vec random_bary(int nvars) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec lam(nvars);
    double s = 0.0;
    for (double& v : lam) s += (v = u(rng) + 1e-3);
    for (double& v : lam) v /= s;
    return lam;
}

} // namespace

TEST_CASE("evaluation basics") {
    const BaryPoly l0 = BaryPoly::lambda(4, 0);
    CHECK(l0.eval({1, 0, 0, 0}) == doctest::Approx(1.0));

    const BaryPoly p = BaryPoly::lambda(4, 1) * BaryPoly::lambda(4, 2);
    CHECK(p.eval({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1.0 / 16.0));

    CHECK_THROWS(l0.eval({1, 0, 0}));
}

TEST_CASE("random quadratic matches independent term-by-term evaluation") {
    const BaryPoly p = random_quadratic(4);
    for (int trial = 0; trial < 10; ++trial) {
        const Vec lam = random_bary(4);
        double direct = 0.0;
        for (const auto& [e, c] : p.terms()) {
            double t = c;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < e[i]; ++k) t *= lam[i];
            direct += t;
        }
        CHECK(p.eval(lam) == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("multiplication basics and degree additivity") {
    const BaryPoly l0 = BaryPoly::lambda(3, 0);
    const BaryPoly l1 = BaryPoly::lambda(3, 1);
    const BaryPoly prod = l0 * l1;
    CHECK(prod.degree() == 2);
    CHECK(prod.coefficient({1, 1, 0}) == doctest::Approx(1.0));

    const BaryPoly sum = l0 + l1;
    const BaryPoly one = BaryPoly::constant(3, 1.0);
    CHECK((sum * one).max_coeff_distance(sum) == doctest::Approx(0.0));

    const BaryPoly p = random_quadratic(3), q = random_quadratic(3);
    CHECK((p * q).degree() <= p.degree() + q.degree());
    CHECK((p * q).max_coeff_distance(q * p) == doctest::Approx(0.0));
}

TEST_CASE("product evaluates to product of evaluations") {
    const BaryPoly p = random_quadratic(4), q = random_quadratic(4);
    const BaryPoly pq = p * q;
    for (int trial = 0; trial < 20; ++trial) {
        const Vec lam = random_bary(4);
        CHECK(pq.eval(lam) == doctest::Approx(p.eval(lam) * q.eval(lam)).epsilon(1e-12));
    }
}

TEST_CASE("arity mismatch is rejected") {
    CHECK_THROWS(BaryPoly::lambda(3, 0) * BaryPoly::lambda(4, 0));
    CHECK_THROWS(BaryPoly::lambda(3, 0) + BaryPoly::lambda(4, 0));
}

TEST_CASE("face restriction") {
    // lambda_j restricted to F_j vanishes.
    for (int j = 0; j < 4; ++j)
        CHECK(BaryPoly::lambda(4, j).restrict_to_face(j).is_zero());

    // lambda_i (i != j) maps to the face coordinate mu_{j,i} in
    // increasing-i order.
    const BaryPoly r = BaryPoly::lambda(4, 2).restrict_to_face(1);
    CHECK(r.max_coeff_distance(BaryPoly::lambda(3, 1)) == doctest::Approx(0.0));

    // g_0 = lambda_1 lambda_2 on face 0 of a triangle -> mu_{0,1} mu_{0,2},
    // quadratic in the edge coordinates.
    const BaryPoly g0 = BaryPoly::lambda(3, 1) * BaryPoly::lambda(3, 2);
    const BaryPoly g0f = g0.restrict_to_face(0);
    CHECK(g0f.max_coeff_distance(BaryPoly::lambda(2, 0) * BaryPoly::lambda(2, 1)) ==
          doctest::Approx(0.0));
    CHECK(g0f.degree() == 2);

    CHECK_THROWS(g0.restrict_to_face(3));
}

TEST_CASE("restriction commutes with evaluation at embedded points") {
    const BaryPoly p = random_quadratic(4);
    for (int j = 0; j < 4; ++j) {
        const BaryPoly pj = p.restrict_to_face(j);
        for (int trial = 0; trial < 10; ++trial) {
            const Vec mu = random_bary(3);
            Vec lam(4, 0.0);
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != j) lam[i] = mu[k++];
            CHECK(p.eval(lam) == doctest::Approx(pj.eval(mu)).epsilon(1e-13));
        }
    }
}

TEST_CASE("pruning keeps the term map clean") {
    const BaryPoly p = random_quadratic(4);
    const BaryPoly diff = p - p;
    CHECK(diff.is_zero());
    for (const auto& [e, c] : p.terms()) {
        (void)e;
        CHECK(c != 0.0);
    }
}
