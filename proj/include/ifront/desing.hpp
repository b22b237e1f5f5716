#ifndef IFRONT_DESING_HPP
#define IFRONT_DESING_HPP

#include <optional>
#include <vector>

#include "ifront/core.hpp"
#include "ifront/ode.hpp"

namespace ifront {

/// Point of the desingularized phase space: u (healthy cells), v (tumor),
/// w = dv/dy. Admissible trajectories live in 0 < u < 1, 0 < v < 1, w < 0.
struct State {
    double u;
    double v;
    double w;
};

/// Tolerances of the shooting integrator. eps_seed bounds the truncation of
/// the unstable-manifold expansion at the seeding point; quiescence is the
/// scale below which a post-turn trajectory counts as collapsed onto the
/// trivial state (see integrate()).
struct ToleranceSet {
    double rtol = 1e-9;
    double atol = 1e-11;
    double event_tol = 1e-10;
    double eps_seed = 1e-8;
    double min_step = 1e-12;
    double max_step = 0.5;
    double quiescence = 1e-7;

    OdeTolerances ode() const { return {rtol, atol, event_tol, min_step, max_step}; }
};

enum class Termination { VCrossedZero, UTurned, BudgetExhausted, StepFailure };

/// Why integration stopped. y carries the interpolated event location for
/// VCrossedZero (root of v) and UTurned (root of u + d v - 1).
struct TerminationEvent {
    Termination kind;
    std::optional<double> y;
};

/// Sampled solution of the desingularized system. Samples sit at accepted
/// integrator steps plus event points; the dense steps allow evaluation at
/// arbitrary y in [y_start, y_end].
struct Trajectory {
    std::vector<double> ys;
    std::vector<State> states;
    TerminationEvent termination{Termination::BudgetExhausted, std::nullopt};
    double y_start = 0.0;
    double y_end = 0.0;
    ModelParams params;

    /// first root of u + d v - 1 (if the turn happened)
    std::optional<double> u_turn_y;
    /// root of v (if v crossed zero; equals termination.y then)
    std::optional<double> v_cross_y;

    std::vector<DenseStep<3>> dense;

    explicit Trajectory(const ModelParams& p) : params(p) {}

    State at(double y) const;
    const State& back() const { return states.back(); }
};

/// Right-hand side of the first-order desingularized system:
///   c u' = -u (1-u) (1-u-dv),  v' = w,  w' = -c w - r v (1-u)(1-v).
State rhs(const State& s, const ModelParams& params);

struct Seed {
    double y_start;
    State state;
};

/// Unstable-manifold seeding at the infected state (0,1,0), d > 1. The seed
/// point is the largest y at which every first-order expansion term has
/// magnitude at most eps_seed.
Seed seed_homogeneous(double alpha, const ModelParams& params, double eps_seed);

/// Unstable-manifold seeding at the coexistence state (1-d,1,0), d < 1.
/// alpha may take any real value. Uses the logarithmic branch when the
/// exponents lambda and mu are flagged degenerate.
Seed seed_heterogeneous(double alpha, const ModelParams& params, double eps_seed);

/// Regime dispatch for the two seeding routines.
Seed seed(double alpha, const ModelParams& params, double eps_seed);

/// Adaptive integration of the desingularized flow with event detection.
///
/// Two event functions are monitored on the dense output:
///   v = 0            terminal; the trajectory is truncated at the root.
///   u + d v - 1 = 0  recorded (first root only); integration continues so a
///                    later v-crossing can still be observed. Armed only once
///                    v has decreased below 1 - 1e-6 to avoid triggering
///                    inside the seeding error ball.
///
/// After a recorded turn the trajectory converges to the trivial state; once
/// u, v, |w| all drop below tol.quiescence the run stops early (v can no
/// longer cross zero at a resolvable scale). The reported termination is
/// VCrossedZero if v crossed, otherwise UTurned if the turn fired, otherwise
/// BudgetExhausted at y_max.
Trajectory integrate(const Seed& seed, const ModelParams& params, double y_max,
                     const ToleranceSet& tol);

} // namespace ifront

#endif
