#ifndef IFRONT_SHOOTING_HPP
#define IFRONT_SHOOTING_HPP

#include "ifront/desing.hpp"

namespace ifront {

enum class ShotKind { Low, High };

/// Outcome of one shot. Low: an event fired (v crossed zero, or the
/// u-component turned around and can no longer reach 1). High: the budget ran
/// out with u at its plateau and v still positive.
struct ShotClass {
    ShotKind kind;
    TerminationEvent termination;
    State final_state;
};

/// Converged bisection output. alpha1 is reported as the High endpoint of the
/// bracket, whose trajectory is the numerical front.
struct ShootingResult {
    double alpha1;
    double alpha_low;
    double alpha_high;
    Trajectory trajectory;
    int n_shots;
    Regime regime;
};

/// Default integration horizon: the v-tail decays like c(1+r)/(d r y), so
/// terminal-v reporting needs y_max well past the transition.
inline double default_y_max(double c) { return std::max(200.0, 50.0 / c); }

/// The High test tolerates the algebraic 1-u ~ c/(r y) plateau of
/// near-critical shots on top of the fixed floor of 1e-4. Capped so that a
/// genuinely mid-transition state still reads as inconclusive.
inline double high_u_slack(const ModelParams& p, double y_max) {
    return std::min(0.25, std::max(1e-4, 4.0 * p.c / (p.r * y_max)));
}

/// Seed, integrate, and classify one value of the shooting parameter.
/// Throws InconclusiveError when the budget runs out mid-transition.
ShotClass classify_shot(double alpha, const ModelParams& params, double y_max,
                        const ToleranceSet& tol = {});

/// Bracket the critical shooting parameter by geometric expansion and bisect
/// on the shot classification until the relative bracket width drops below
/// alpha_tol.
ShootingResult find_alpha1(const ModelParams& params, double alpha_tol, double y_max,
                           const ToleranceSet& tol = {});

/// Convenience wrapper: the High-side trajectory of the converged bracket.
Trajectory front_in_y(const ModelParams& params, double alpha_tol, double y_max,
                      const ToleranceSet& tol = {});

} // namespace ifront

#endif
