#ifndef IFRONT_ASYMPTOTICS_HPP
#define IFRONT_ASYMPTOTICS_HPP

#include <array>
#include <span>
#include <vector>

#include "ifront/core.hpp"
#include "ifront/ode.hpp"

namespace ifront {

/// Matched slow-speed solution of the v-equation: a Fisher-KPP branch on
/// y <= 0 glued C^1 to the pure exponential v0(0) e^{-c y} on y >= 0.
/// The matching point is the unique zero of psi = v' + c v, translated to 0.
struct PiecewiseV0 {
    std::vector<double> grid;
    std::vector<double> values;
    double v0_at_0 = 0.0;

    double eval(double y) const;

    // internals of the left branch (shifted so the matching point sits at 0)
    double c = 0.0, lambda = 0.0, y2 = 0.0;
    double left_end = 0.0; // left edge of the integrated branch
    std::vector<DenseStep<2>> dense;
};

/// Numeric matched v0 on the given grid. Requires 0 < c < 2 sqrt(r).
PiecewiseV0 fkpp_v0(const ModelParams& params, std::span<const double> grid);

/// Closed-form approximation of v0 (error O(c^2)):
///   1 - (c/(c+lambda)) e^{lambda y} for y <= 0,
///   (lambda/(c+lambda)) e^{-c y}    for y >= 0.
double hat_v0(double y, const ModelParams& params);

/// Slow-front approximation bundle: b = d v0(0) - 1 computed from the closed
/// form, the calibration constant of the implicit u0 relation, and the
/// derived translation constants kappa and xi_star = Phi^{-1}(0).
struct SlowFrontApprox {
    double b = 0.0;
    double alpha_cal = 0.0;
    double kappa = 0.0;
    double xi_star = 0.0;
    ModelParams params;
};

/// Assemble the bundle for an explicitly chosen calibration constant.
SlowFrontApprox make_slow_front_approx(const ModelParams& params, double alpha);

/// Fix the calibration constant by imposing the speed-consistency integral
///   r * int hat_v0 (1 - hat_v0) (1 - u0) dy = c,
/// root-finding on the translation s = (c/b) ln(alpha).
SlowFrontApprox calibrate_alpha(const ModelParams& params);

/// Fast-variable profile: the root of
///   u^{1+b} / ((1-u)^b (b+u)) = (alpha^{1+b}/b) exp(b(1+b) y / c)
/// by bracketed bisection on (0,1).
double solve_u0(double y, const SlowFrontApprox& approx);

struct SharpProfile {
    std::vector<double> xi;
    std::vector<double> U0;
    std::vector<double> V0;
};

/// Leading-order sharp front on a grid of negative xi (the edge sits at 0).
SharpProfile sharp_profile(const SlowFrontApprox& approx, std::span<const double> xi_grid);

/// Approximate effective diffusion phi0 near V = 0: exponent m = (1+b)/c^2,
/// prefactor beta with beta^b = b / ((b+1) alpha^{1+b}), and a sampled
/// (V0, 1-U0) curve sorted by V0.
struct Phi0Flatness {
    double m = 0.0;
    double beta = 0.0;
    std::vector<std::array<double, 2>> curve;
};

Phi0Flatness phi0_flatness(const SlowFrontApprox& approx);

/// Minimal-speed bounds of the degenerate scalar model V_t = D (V^m V_x)_x + rV(1-V):
///   2Dr/((m+1)(m+2)) <= c* <= 2Dr/(m(m+1)),
/// plus the large-m reference estimate sqrt(2Dr)/m.
struct MinimalSpeedBounds {
    double lower = 0.0;
    double upper = 0.0;
    double large_m_estimate = 0.0;
};

MinimalSpeedBounds scalar_minimal_speed_bounds(double D, double r, double m);

} // namespace ifront

#endif
