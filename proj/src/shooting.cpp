#include "ifront/shooting.hpp"

#include <cmath>
#include <stdexcept>

#include "ifront/errors.hpp"

namespace ifront {

namespace {

ShotClass classify(const Trajectory& traj, const ModelParams& p, double y_max) {
    const State& last = traj.back();
    switch (traj.termination.kind) {
        case Termination::VCrossedZero:
        case Termination::UTurned:
            return {ShotKind::Low, traj.termination, last};
        case Termination::StepFailure:
            throw StepFailureError(traj.y_end);
        case Termination::BudgetExhausted:
            if (last.u >= 1.0 - high_u_slack(p, y_max) && last.v > 0.0)
                return {ShotKind::High, traj.termination, last};
            throw InconclusiveError(y_max);
    }
    throw std::logic_error("classify: unreachable");
}

struct Shot {
    ShotClass cls;
    Trajectory traj;
};

Shot shoot(double alpha, const ModelParams& p, double y_max, const ToleranceSet& tol) {
    Trajectory traj = integrate(seed(alpha, p, tol.eps_seed), p, y_max, tol);
    ShotClass cls = classify(traj, p, y_max);
    return {cls, std::move(traj)};
}

} // namespace

ShotClass classify_shot(double alpha, const ModelParams& p, double y_max,
                        const ToleranceSet& tol) {
    return shoot(alpha, p, y_max, tol).cls;
}

ShootingResult find_alpha1(const ModelParams& p, double alpha_tol, double y_max,
                           const ToleranceSet& tol) {
    if (!(alpha_tol > 0.0))
        throw std::invalid_argument("find_alpha1: alpha_tol must be positive");

    int n_shots = 0;
    const auto is_high = [&](double alpha) {
        ++n_shots;
        try {
            return shoot(alpha, p, y_max, tol).cls.kind == ShotKind::High;
        } catch (const InconclusiveError&) {
            throw InconclusiveError(y_max, alpha); // name the offending alpha
        }
    };

    constexpr int k_min = -20, k_max = 40;
    double lo = 0.0, hi = 0.0; // Low / High endpoints of the initial bracket
    bool found = false;

    if (p.homogeneous()) {
        // candidates 2^k, k = -20..40, walked from alpha = 1
        bool prev_high = is_high(1.0);
        if (prev_high) {
            for (int k = -1; k >= k_min && !found; --k) {
                const double a = std::ldexp(1.0, k);
                if (!is_high(a)) {
                    lo = a;
                    hi = std::ldexp(1.0, k + 1);
                    found = true;
                }
            }
        } else {
            for (int k = 1; k <= k_max && !found; ++k) {
                const double a = std::ldexp(1.0, k);
                if (is_high(a)) {
                    lo = std::ldexp(1.0, k - 1);
                    hi = a;
                    found = true;
                }
            }
        }
    } else {
        // candidates {0, +-2^k}: alpha may be negative here
        bool zero_high = is_high(0.0);
        if (zero_high) {
            hi = 0.0;
            for (int k = k_min; k <= k_max && !found; ++k) {
                const double a = -std::ldexp(1.0, k);
                if (!is_high(a)) {
                    lo = a;
                    found = true;
                } else {
                    hi = a;
                }
            }
        } else {
            lo = 0.0;
            for (int k = k_min; k <= k_max && !found; ++k) {
                const double a = std::ldexp(1.0, k);
                if (is_high(a)) {
                    hi = a;
                    found = true;
                } else {
                    lo = a;
                }
            }
        }
    }
    if (!found)
        throw BracketNotFoundError(
            "find_alpha1: geometric expansion found no Low/High bracket; "
            "y_max may be too small or the parameters pathological");

    const auto width_ok = [&](double a, double b) {
        return (b - a) <= alpha_tol * std::max(std::abs(a), std::abs(b));
    };
    for (int i = 0; i < 300 && !width_ok(lo, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket at floating-point resolution
        (is_high(mid) ? hi : lo) = mid;
    }

    Shot high = shoot(hi, p, y_max, tol);
    ++n_shots;
    return {hi, lo, hi, std::move(high.traj), n_shots, p.regime};
}

Trajectory front_in_y(const ModelParams& p, double alpha_tol, double y_max,
                      const ToleranceSet& tol) {
    return find_alpha1(p, alpha_tol, y_max, tol).trajectory;
}

} // namespace ifront
