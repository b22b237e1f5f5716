#ifndef IFRONT_PDESIM_HPP
#define IFRONT_PDESIM_HPP

#include <functional>
#include <vector>

#include "ifront/core.hpp"

namespace ifront {

struct Grid1D {
    double x_min;
    double x_max;
    int nx;
    double dx;

    Grid1D(double x_min_, double x_max_, int nx_);
    double x(int i) const { return x_min + i * dx; }
};

/// Fields of the direct simulation, clamped to [0,1] pointwise.
struct FieldPair {
    std::vector<double> U;
    std::vector<double> V;
    double t = 0.0;
};

/// Heaviside-type initial data: left state for x < x0 ((0,1) homogeneous,
/// (1-d,1) heterogeneous), healthy state (1,0) for x >= x0. U is clamped at
/// 1 - 1e-6 everywhere; at U = 1 the degenerate problem may be ill-posed.
FieldPair heaviside_initial(const Grid1D& grid, const ModelParams& params, double x0);

/// Stability bound on the explicit time step: diffusion (0.4 dx^2 / (2 max f))
/// combined with a reaction margin 0.1/max(r, d, 1).
double cfl_bound(const FieldPair& fields, const Grid1D& grid, const ModelParams& params);

/// One explicit update with conservative flux F_{i+1/2} =
/// max(1-(U_i+U_{i+1})/2, 0) (V_{i+1}-V_i)/dx and zero-flux boundaries.
/// Throws CflViolationError when dt exceeds the stability bound.
FieldPair step(const FieldPair& fields, double dt, const Grid1D& grid,
               const ModelParams& params);

struct PdeRunResult {
    FieldPair fields;
    double measured_speed = 0.0;
    std::vector<double> times;
    std::vector<double> front_positions;
};

/// Advance to t_end with dt = safety * CFL bound, tracking the V = 1/2
/// crossing at each output frame. The measured speed is the least-squares
/// slope of position vs time over the second half of the run. Throws
/// FrontHitBoundaryError when the front enters the 10% boundary buffer.
/// frame_cb, when set, receives every output frame.
PdeRunResult run(FieldPair initial, double t_end, const Grid1D& grid,
                 const ModelParams& params, double out_dt = 0.5, double safety = 1.0,
                 const std::function<void(const FieldPair&)>& frame_cb = {});

} // namespace ifront

#endif
