#include "ifront/desing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifront {

State rhs(const State& s, const ModelParams& p) {
    State d;
    d.u = -s.u * (1.0 - s.u) * (1.0 - s.u - p.d * s.v) / p.c;
    d.v = s.w;
    d.w = -p.c * s.w - p.r * s.v * (1.0 - s.u) * (1.0 - s.v);
    return d;
}

namespace {

// largest y with coef * e^{rate y} = eps (coef > 0, rate > 0)
double exp_term_cutoff(double coef, double rate, double eps) {
    return std::log(eps / coef) / rate;
}

// Degenerate heterogeneous branch: largest y on the far-left increasing
// branch with |alpha - d mu y| e^{mu y} = eps. Bracketed bisection below the
// local extremum of the envelope.
double log_term_cutoff(double alpha, double d, double mu, double eps) {
    const auto term = [&](double y) { return std::abs(alpha - d * mu * y) * std::exp(mu * y); };
    double hi = std::min((alpha - d) / (d * mu), -1.0); // envelope peak (or -1)
    if (term(hi) <= eps) return hi;
    double lo = hi - 1.0;
    while (term(lo) > eps) {
        lo = hi + 2.0 * (lo - hi);
        if (lo < -1e8) throw std::runtime_error("seed_heterogeneous: cutoff search failed");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::abs(lo); ++i) {
        const double mid = 0.5 * (lo + hi);
        (term(mid) > eps ? hi : lo) = mid;
    }
    return lo;
}

} // namespace

Seed seed_homogeneous(double alpha, const ModelParams& p, double eps_seed) {
    if (!p.homogeneous())
        throw std::invalid_argument("seed_homogeneous: requires d > 1");
    if (!(alpha > 0.0))
        throw std::invalid_argument("seed_homogeneous: alpha must be positive");
    if (!(eps_seed > 0.0) || eps_seed > 1e-6)
        throw std::invalid_argument("seed_homogeneous: need 0 < eps_seed <= 1e-6");

    const Rates rt = compute_rates(p);
    const double y = std::min(exp_term_cutoff(alpha, rt.mu, eps_seed),
                              exp_term_cutoff(1.0, rt.lambda, eps_seed));
    const double ev = std::exp(rt.lambda * y);
    return {y, {alpha * std::exp(rt.mu * y), 1.0 - ev, -rt.lambda * ev}};
}

Seed seed_heterogeneous(double alpha, const ModelParams& p, double eps_seed) {
    if (p.homogeneous())
        throw std::invalid_argument("seed_heterogeneous: requires d < 1");
    if (!(eps_seed > 0.0) || eps_seed > 1e-6)
        throw std::invalid_argument("seed_heterogeneous: need 0 < eps_seed <= 1e-6");

    const Rates rt = compute_rates(p);
    double y = exp_term_cutoff(1.0, rt.lambda, eps_seed);

    if (rt.degenerate) {
        y = std::min(y, log_term_cutoff(alpha, p.d, rt.mu, eps_seed));
        const double ev = std::exp(rt.lambda * y);
        const double u = 1.0 - p.d + (alpha - p.d * rt.mu * y) * std::exp(rt.mu * y);
        return {y, {u, 1.0 - ev, -rt.lambda * ev}};
    }

    const double K = p.d * rt.mu / (rt.mu - rt.lambda);
    if (alpha != 0.0) y = std::min(y, exp_term_cutoff(std::abs(alpha), rt.mu, eps_seed));
    y = std::min(y, exp_term_cutoff(std::abs(K), rt.lambda, eps_seed));
    y = std::min(y, exp_term_cutoff(std::abs(K), rt.mu, eps_seed));

    const double ev = std::exp(rt.lambda * y);
    const double em = std::exp(rt.mu * y);
    const double u = 1.0 - p.d + alpha * em + K * em * std::expm1((rt.lambda - rt.mu) * y);
    return {y, {u, 1.0 - ev, -rt.lambda * ev}};
}

Seed seed(double alpha, const ModelParams& p, double eps_seed) {
    return p.homogeneous() ? seed_homogeneous(alpha, p, eps_seed)
                           : seed_heterogeneous(alpha, p, eps_seed);
}

State Trajectory::at(double y) const {
    if (dense.empty()) return states.front();
    y = std::clamp(y, y_start, y_end);
    auto it = std::upper_bound(dense.begin(), dense.end(), y,
                               [](double v, const DenseStep<3>& s) { return v < s.y0; });
    const DenseStep<3>& step = it == dense.begin() ? *it : *(it - 1);
    const Vec<3> s = step.eval_at(y);
    return {s[0], s[1], s[2]};
}

Trajectory integrate(const Seed& seed, const ModelParams& p, double y_max,
                     const ToleranceSet& tol) {
    if (!(y_max > seed.y_start))
        throw std::invalid_argument("integrate: y_max must exceed the seeding point");

    const auto f = [&p](double, const Vec<3>& s) -> Vec<3> {
        const State d = rhs({s[0], s[1], s[2]}, p);
        return {d.u, d.v, d.w};
    };
    const auto g_turn = [&p](const Vec<3>& s) { return s[0] + p.d * s[1] - 1.0; };
    const auto g_v = [](const Vec<3>& s) { return s[1]; };

    Trajectory traj(p);
    traj.y_start = seed.y_start;
    traj.ys.push_back(seed.y_start);
    traj.states.push_back(seed.state);

    Dopri5<3, decltype(f)> stepper(f, tol.ode(), seed.y_start,
                                   {seed.state.u, seed.state.v, seed.state.w});
    // the u-perturbation rides the strong unstable mode of the left state;
    // control it relatively so seed-scale errors cannot amplify through the
    // transition
    stepper.set_component_atol(0, 1e-300);

    bool turn_armed = false;
    try {
        while (stepper.y() < y_max) {
            DenseStep<3> dstep;
            const Vec<3> prev = stepper.state();
            const double y_prev = stepper.y();
            stepper.step(y_max, dstep);
            const Vec<3> cur = stepper.state();
            const double y_cur = stepper.y();
            traj.dense.push_back(dstep);

            // u-turn event: first root of u + d v - 1, armed outside the seed ball
            if (!traj.u_turn_y) {
                if (!turn_armed && cur[1] <= 1.0 - 1e-6) {
                    turn_armed = true;
                    if (g_turn(cur) <= 0.0) traj.u_turn_y = y_cur;
                } else if (turn_armed && g_turn(prev) > 0.0 && g_turn(cur) <= 0.0) {
                    const double yt = refine_event(dstep, g_turn, y_prev, y_cur, tol.event_tol);
                    traj.u_turn_y = yt;
                    if (yt > traj.ys.back() && yt < y_cur) {
                        const Vec<3> st = dstep.eval_at(yt);
                        traj.ys.push_back(yt);
                        traj.states.push_back({st[0], st[1], st[2]});
                    }
                }
            }

            // v = 0 event: terminal
            if (prev[1] > 0.0 && cur[1] <= 0.0) {
                double yc = refine_event(dstep, g_v, y_prev, y_cur, tol.event_tol);
                yc = std::max(yc, traj.ys.back() + tol.event_tol);
                const Vec<3> sc = dstep.eval_at(yc);
                traj.ys.push_back(yc);
                traj.states.push_back({sc[0], sc[1], sc[2]});
                traj.v_cross_y = yc;
                traj.y_end = yc;
                traj.termination = {Termination::VCrossedZero, yc};
                return traj;
            }

            traj.ys.push_back(y_cur);
            traj.states.push_back({cur[0], cur[1], cur[2]});

            // after a turn the orbit can only sink into the trivial state;
            // stop once every component is below the quiescence scale
            if (traj.u_turn_y && cur[0] < tol.quiescence && cur[1] < tol.quiescence &&
                std::abs(cur[2]) < tol.quiescence) {
                traj.y_end = y_cur;
                traj.termination = {Termination::UTurned, *traj.u_turn_y};
                return traj;
            }
        }
    } catch (const StepFailureError& e) {
        traj.y_end = e.y;
        traj.termination = {Termination::StepFailure, e.y};
        return traj;
    }

    traj.y_end = stepper.y();
    if (traj.u_turn_y)
        traj.termination = {Termination::UTurned, *traj.u_turn_y};
    else
        traj.termination = {Termination::BudgetExhausted, std::nullopt};
    return traj;
}

} // namespace ifront
