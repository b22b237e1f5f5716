#ifndef IFRONT_PROFILE_HPP
#define IFRONT_PROFILE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ifront/desing.hpp"

namespace ifront {

/// Least-squares fit of ln(ys) against xs over an index window.
struct TailFit {
    double rate = 0.0;          // fitted slope
    double residual_norm = 0.0; // rms of the log residuals
    double x_lo = 0.0, x_hi = 0.0;
    std::size_t n = 0;
};

/// Diagnostics attached to a reconstructed front. Fits carry the window they
/// were produced on.
struct Diagnostics {
    double speed_residual = 0.0;
    TailFit tail_gamma;  // right tail of 1-U, expected rate -r/c
    TailFit tail_lambda; // left tail of 1-V, expected rate +lambda
    TailFit tail_mu;     // left tail of U-U(-inf), expected rate +mu (homogeneous)
    double tail_ratio = 0.0; // limit of V/(1-U) at +inf, expected (r+1)/d
    double center_manifold_residual = 0.0;
};

/// Front profile in the physical comoving coordinate. xi is strictly
/// increasing, U strictly increasing, V strictly decreasing; y records the
/// desingularized coordinate of each sample. Normalized so that U crosses the
/// midpoint of its range at xi = 0.
struct FrontProfile {
    std::vector<double> xi;
    std::vector<double> U;
    std::vector<double> V;
    std::vector<double> y;
    ModelParams params;
    Diagnostics diagnostics;

    explicit FrontProfile(const ModelParams& p) : params(p) {}
};

/// Invert the desingularizing change of variables on a connecting (High)
/// trajectory and run all front diagnostics.
FrontProfile reconstruct(const Trajectory& traj, const ModelParams& params);

/// |r * integral of V(1-V) dxi - c| / c with analytic tail corrections from
/// fitted exponentials. Throws TailsNotResolvedError when V(1-V) is not small
/// at both ends of the grid.
double speed_residual(const FrontProfile& profile);

/// Least-squares slope of ln(ys) vs xs over [begin, end). Requires at least
/// 10 points, all ys positive on the window.
TailFit fit_tail_exponent(std::span<const double> xs, std::span<const double> ys,
                          std::size_t begin, std::size_t end);

/// Median of V/(1-U) over the rightmost fitting window.
double tail_ratio(const FrontProfile& profile);

/// The effective diffusion coefficient sampled as (V, 1-U) pairs sorted by V.
std::vector<std::array<double, 2>> effective_diffusion(const FrontProfile& profile);

/// Worst relative deviation of the trajectory tail from the center-manifold
/// asymptotics: the graph relation w/c ~ -(r/c^2)(1-u)(v+w/c) over the last
/// decade of y, and the products (1-u)y -> c/r, (v+w/c)y -> c(1+r)/(dr) at
/// y_end.
double center_tail_check(const Trajectory& traj, const ModelParams& params);

} // namespace ifront

#endif
