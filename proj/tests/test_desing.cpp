#include <doctest.h>

#include <cmath>

#include "ifront/desing.hpp"

using namespace ifront;

TEST_CASE("rhs vanishes at the equilibria and matches hand evaluation") {
    const ModelParams p(2.0, 1.0, 1.0);
    auto d1 = rhs({0.0, 1.0, 0.0}, p);
    CHECK(d1.u == 0.0);
    CHECK(d1.v == 0.0);
    CHECK(d1.w == 0.0);
    auto d2 = rhs({1.0, 0.0, 0.0}, p);
    CHECK(d2.u == 0.0);
    CHECK(d2.v == 0.0);
    CHECK(d2.w == 0.0);
    // (0.5, 0.5, -0.1): du = -0.5*0.5*(1-0.5-1)/1 = 0.125, dw = 0.1 - 0.125
    auto d3 = rhs({0.5, 0.5, -0.1}, p);
    CHECK(d3.u == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(d3.v == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(d3.w == doctest::Approx(-0.025).epsilon(1e-15));
}

TEST_CASE("homogeneous seeding sits on the expansion") {
    const ModelParams p(2.0, 1.0, 2.0);
    const Rates rt = compute_rates(p);
    const double eps = 1e-8;

    SUBCASE("alpha = 1: cutoff is the binding exponential") {
        const Seed s = seed_homogeneous(1.0, p, eps);
        CHECK(s.y_start ==
              doctest::Approx(std::min(std::log(eps) / rt.mu, std::log(eps) / rt.lambda)));
        const double worst = std::max(std::exp(rt.mu * s.y_start),
                                      std::exp(rt.lambda * s.y_start));
        CHECK(worst == doctest::Approx(eps).epsilon(1e-12));
        CHECK(s.state.v > 1.0 - 1e-7);
        CHECK(s.state.v < 1.0);
    }

    SUBCASE("w = -lambda (1 - v) exactly at the seed") {
        for (double alpha : {0.1, 1.0, 10.0}) {
            const Seed s = seed_homogeneous(alpha, p, eps);
            CHECK(s.state.w == doctest::Approx(-rt.lambda * (1.0 - s.state.v)).epsilon(1e-14));
        }
    }

    SUBCASE("alpha = 10: all terms capped at eps, the largest attains it") {
        const Seed s = seed_homogeneous(10.0, p, eps);
        const double tu = 10.0 * std::exp(rt.mu * s.y_start);
        const double tv = std::exp(rt.lambda * s.y_start);
        CHECK(tu <= eps * (1.0 + 1e-12));
        CHECK(tv <= eps * (1.0 + 1e-12));
        CHECK(std::max(tu, tv) == doctest::Approx(eps).epsilon(1e-12));
    }

    CHECK_THROWS_AS(seed_homogeneous(-1.0, p, eps), std::invalid_argument);
    CHECK_THROWS_AS(seed_homogeneous(1.0, p, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(seed_homogeneous(1.0, ModelParams(0.5, 1, 1), eps), std::invalid_argument);
}

TEST_CASE("heterogeneous seeding") {
    const double eps = 1e-8;

    SUBCASE("alpha = 0 reduces to the cross term, (d=0.5, r=2, c=1)") {
        const ModelParams p(0.5, 2.0, 1.0);
        const Rates rt = compute_rates(p);
        CHECK(rt.lambda == doctest::Approx((-1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
        CHECK(rt.mu == doctest::Approx(0.25).epsilon(1e-14));
        const Seed s = seed_heterogeneous(0.0, p, eps);
        const double K = p.d * rt.mu / (rt.mu - rt.lambda);
        const double expect = 1.0 - p.d +
                              K * (std::exp(rt.lambda * s.y_start) - std::exp(rt.mu * s.y_start));
        CHECK(s.state.u == doctest::Approx(expect).epsilon(1e-12));
    }

    SUBCASE("degenerate lambda = mu branch, (d=0.5, r=1, c=0.5)") {
        const ModelParams p(0.5, 1.0, 0.5);
        const Rates rt = compute_rates(p);
        REQUIRE(rt.degenerate);
        for (double alpha : {-2.0, 0.0, 1.0}) {
            const Seed s = seed_heterogeneous(alpha, p, eps);
            const double expect =
                0.5 + (alpha - 0.25 * s.y_start) * std::exp(0.5 * s.y_start);
            CHECK(s.state.u == doctest::Approx(expect).epsilon(1e-12));
            // the logarithmic term is capped at eps
            CHECK(std::abs(alpha - 0.25 * s.y_start) * std::exp(0.5 * s.y_start) <=
                  eps * (1.0 + 1e-9));
        }
    }

    SUBCASE("v and w seeds match the homogeneous form") {
        const ModelParams p(0.5, 2.0, 1.0);
        const Rates rt = compute_rates(p);
        const Seed s = seed_heterogeneous(3.0, p, eps);
        const double ev = std::exp(rt.lambda * s.y_start);
        CHECK(s.state.v == doctest::Approx(1.0 - ev).epsilon(1e-14));
        CHECK(s.state.w == doctest::Approx(-rt.lambda * ev).epsilon(1e-14));
    }
}

TEST_CASE("integration from the equilibrium is constant until the budget") {
    const ModelParams p(2.0, 1.0, 1.0);
    const Trajectory traj = integrate({-10.0, {0.0, 1.0, 0.0}}, p, 50.0, {});
    CHECK(traj.termination.kind == Termination::BudgetExhausted);
    CHECK(traj.back().u == 0.0);
    CHECK(traj.back().v == 1.0);
    CHECK(traj.back().w == 0.0);
    CHECK(traj.y_end == doctest::Approx(50.0));
}

TEST_CASE("weakly damped small-alpha shot crosses v = 0") {
    const ModelParams p(2.0, 1.0, 0.5);
    const ToleranceSet tol;
    const Trajectory traj = integrate(seed(1e-4, p, tol.eps_seed), p, 200.0, tol);
    CHECK(traj.termination.kind == Termination::VCrossedZero);
    REQUIRE(traj.u_turn_y.has_value());
    REQUIRE(traj.v_cross_y.has_value());
    // the turn precedes the crossing
    CHECK(*traj.u_turn_y <= *traj.v_cross_y);
    // v vanishes at the event location
    CHECK(std::abs(traj.back().v) < 1e-8);
    CHECK(traj.back().w < 0.0);
}

TEST_CASE("strongly damped shots never cross v = 0") {
    const ModelParams p(2.0, 1.0, 2.5);
    const ToleranceSet tol;
    for (double alpha : {1e-4, 1e-2, 1.0}) {
        const Trajectory traj = integrate(seed(alpha, p, tol.eps_seed), p, 200.0, tol);
        CHECK(traj.termination.kind != Termination::VCrossedZero);
        CHECK_FALSE(traj.v_cross_y.has_value());
    }
}

TEST_CASE("region invariance before the v-crossing") {
    const ModelParams p(2.0, 1.0, 0.5);
    const ToleranceSet tol;
    for (double alpha : {1e-4, 1e-2, 0.5}) {
        const Trajectory traj = integrate(seed(alpha, p, tol.eps_seed), p, 200.0, tol);
        const double ylim = traj.v_cross_y.value_or(traj.y_end);
        for (std::size_t i = 0; i < traj.ys.size(); ++i) {
            if (traj.ys[i] >= ylim) break;
            const State& s = traj.states[i];
            CHECK(s.u > -1e-12);
            CHECK(s.u < 1.0 + 1e-12);
            CHECK(s.v > -1e-12);
            CHECK(s.v < 1.0 + 1e-12);
            CHECK(s.w < 1e-12);
        }
    }
}

TEST_CASE("halving tolerances moves the terminal state by less than 10x tolerance") {
    const ModelParams p(2.0, 1.0, 2.5);
    ToleranceSet tol;
    const Trajectory a = integrate(seed(1.0, p, tol.eps_seed), p, 100.0, tol);
    ToleranceSet tight = tol;
    tight.rtol /= 2.0;
    tight.atol /= 2.0;
    const Trajectory b = integrate(seed(1.0, p, tight.eps_seed), p, 100.0, tight);
    CHECK(std::abs(a.back().u - b.back().u) < 10.0 * tol.rtol);
    CHECK(std::abs(a.back().v - b.back().v) < 10.0 * tol.rtol);
    CHECK(std::abs(a.back().w - b.back().w) < 10.0 * tol.rtol);
}

TEST_CASE("seeding consistency: eps and eps/10 agree along the flow") {
    const ModelParams p(2.0, 1.0, 1.0);
    ToleranceSet tol;
    tol.eps_seed = 1e-6;
    ToleranceSet tighter = tol;
    tighter.eps_seed = 1e-7;
    const double alpha = 1.0;
    const Trajectory a = integrate(seed(alpha, p, tol.eps_seed), p, 20.0, tol);
    const Trajectory b = integrate(seed(alpha, p, tighter.eps_seed), p, 20.0, tighter);
    for (double y : {a.y_start, -10.0, -2.0, 0.0, 5.0}) {
        const State sa = a.at(y);
        const State sb = b.at(y);
        CHECK(std::abs(sa.u - sb.u) < 10.0 * tol.eps_seed);
        CHECK(std::abs(sa.v - sb.v) < 10.0 * tol.eps_seed);
        CHECK(std::abs(sa.w - sb.w) < 10.0 * tol.eps_seed);
    }
}

TEST_CASE("trajectory samples are strictly increasing in y") {
    const ModelParams p(2.0, 1.0, 0.5);
    const ToleranceSet tol;
    const Trajectory traj = integrate(seed(1e-3, p, tol.eps_seed), p, 200.0, tol);
    CHECK(traj.ys.front() == traj.y_start);
    CHECK(traj.ys.back() == doctest::Approx(traj.y_end));
    for (std::size_t i = 1; i < traj.ys.size(); ++i) CHECK(traj.ys[i] > traj.ys[i - 1]);
}
