#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ifront/core.hpp"

using namespace ifront;

TEST_CASE("parameter guards") {
    CHECK_THROWS_AS(ModelParams(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(2.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(2.0, 1.0, 0.0), std::invalid_argument);
    CHECK(ModelParams(2.0, 1.0, 1.0).regime == Regime::Homogeneous);
    CHECK(ModelParams(0.5, 1.0, 1.0).regime == Regime::Heterogeneous);
}

TEST_CASE("homogeneous rates at (2,1,2)") {
    const Rates rt = compute_rates(ModelParams(2.0, 1.0, 2.0));
    CHECK(rt.lambda == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    CHECK(rt.mu == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rt.gamma == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rt.eta == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    CHECK(rt.zeta < 0.0);
    CHECK(rt.delta == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
    CHECK_FALSE(rt.degenerate);
}

TEST_CASE("heterogeneous degenerate rates at (0.5,1,0.5)") {
    const Rates rt = compute_rates(ModelParams(0.5, 1.0, 0.5));
    // lambda = (-0.5 + sqrt(0.25 + 2))/2 = 0.5, mu = 0.5*0.5/0.5 = 0.5
    CHECK(rt.lambda == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rt.mu == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rt.degenerate);
}

TEST_CASE("defining quadratic identities over random parameters") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.05, 5.0);
    for (int i = 0; i < 200; ++i) {
        double d = dist(rng);
        if (std::abs(d - 1.0) < 1e-3) d += 0.1;
        const double r = dist(rng), c = dist(rng);
        const ModelParams p(d, r, c);
        const Rates rt = compute_rates(p);
        const double target = p.homogeneous() ? r : d * r;
        CHECK(std::abs(rt.lambda * (rt.lambda + c) - target) <= 1e-12 * std::max(1.0, target));
        const double mu_target = p.homogeneous() ? d - 1.0 : d * (1.0 - d);
        CHECK(std::abs(rt.mu * c - mu_target) <= 1e-12);
        CHECK(rt.lambda > 0.0);
        CHECK(rt.mu > 0.0);
        CHECK(rt.gamma > 0.0);
        CHECK(rt.eta == std::min(rt.lambda, rt.mu));
        CHECK(rt.zeta < 0.0);
    }
}

TEST_CASE("equilibrium classification table") {
    const auto eq = classify_equilibria(2.0, 1.0);
    REQUIRE(eq.size() == 4);
    CHECK(eq[0].kind == EquilibriumKind::UnstableNode); // (0,0)
    CHECK(eq[0].eigenvalues[0] == 1.0);
    CHECK(eq[0].eigenvalues[1] == 1.0);
    CHECK(eq[1].kind == EquilibriumKind::Saddle); // (1,0)
    CHECK(eq[2].kind == EquilibriumKind::StableNode); // (0,1), d > 1
    CHECK(eq[2].eigenvalues[0] == -1.0);
    CHECK(eq[2].eigenvalues[1] == -1.0);
    CHECK(eq[3].kind == EquilibriumKind::Saddle); // (1-d,1), d > 1

    const auto eqh = classify_equilibria(0.5, 1.0);
    CHECK(eqh[2].kind == EquilibriumKind::Saddle);     // (0,1), d < 1
    CHECK(eqh[3].kind == EquilibriumKind::StableNode); // (0.5,1)
    CHECK(eqh[3].point[0] == doctest::Approx(0.5));
    CHECK(eqh[3].eigenvalues[0] == doctest::Approx(-0.5));
    CHECK(eqh[3].eigenvalues[1] == doctest::Approx(-1.0));

    CHECK_THROWS_AS(classify_equilibria(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("eigenvalues match trace and determinant of the linearization") {
    for (double d : {0.5, 2.0, 3.5}) {
        for (double r : {0.5, 1.0, 5.0}) {
            for (const auto& eq : classify_equilibria(d, r)) {
                const double ub = eq.point[0], vb = eq.point[1];
                const double a11 = 1.0 - 2.0 * ub - d * vb;
                const double a22 = r * (1.0 - 2.0 * vb);
                // the linearization is triangular: eigenvalues are a11, a22
                const double tr = eq.eigenvalues[0] + eq.eigenvalues[1];
                const double det = eq.eigenvalues[0] * eq.eigenvalues[1];
                CHECK(tr == doctest::Approx(a11 + a22).epsilon(1e-13));
                CHECK(det == doctest::Approx(a11 * a22).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("exchange of stability across d = 1") {
    const double eps = 1e-3;
    const auto lo = classify_equilibria(1.0 - eps, 1.0);
    const auto hi = classify_equilibria(1.0 + eps, 1.0);
    CHECK(lo[2].kind == EquilibriumKind::Saddle);
    CHECK(hi[2].kind == EquilibriumKind::StableNode);
    CHECK(lo[3].kind == EquilibriumKind::StableNode);
    CHECK(hi[3].kind == EquilibriumKind::Saddle);
}
