#include "ifront/pdesim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "ifront/errors.hpp"

namespace ifront {

Grid1D::Grid1D(double x_min_, double x_max_, int nx_)
    : x_min(x_min_), x_max(x_max_), nx(nx_) {
    if (nx < 16) throw std::invalid_argument("Grid1D: need nx >= 16");
    if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: empty domain");
    dx = (x_max - x_min) / (nx - 1);
}

FieldPair heaviside_initial(const Grid1D& g, const ModelParams& p, double x0) {
    if (!(x0 > g.x_min) || !(x0 < g.x_max))
        throw std::invalid_argument("heaviside_initial: x0 must be interior");
    const double u_left = p.homogeneous() ? 0.0 : 1.0 - p.d;
    const double u_cap = 1.0 - 1e-6;
    FieldPair f;
    f.U.resize(g.nx);
    f.V.resize(g.nx);
    for (int i = 0; i < g.nx; ++i) {
        const bool left = g.x(i) < x0;
        f.U[i] = std::min(left ? u_left : 1.0, u_cap);
        f.V[i] = left ? 1.0 : 0.0;
    }
    return f;
}

double cfl_bound(const FieldPair& f, const Grid1D& g, const ModelParams& p) {
    double fmax = 0.0;
    for (double u : f.U) fmax = std::max(fmax, 1.0 - u);
    const double diff = fmax > 0.0 ? 0.4 * g.dx * g.dx / (2.0 * fmax)
                                   : std::numeric_limits<double>::infinity();
    const double reac = 0.1 / std::max({p.r, p.d, 1.0});
    return std::min(diff, reac);
}

namespace {

void step_into(const FieldPair& f, FieldPair& out, double dt, const Grid1D& g,
               const ModelParams& p) {
    const int n = g.nx;
    const double rdx = 1.0 / g.dx;
    out.U.resize(n);
    out.V.resize(n);
    // zero-flux boundaries: F_{-1/2} = F_{n-1+1/2} = 0
    double flux_left = 0.0;
    for (int i = 0; i < n; ++i) {
        double flux_right = 0.0;
        if (i + 1 < n) {
            const double face = std::max(1.0 - 0.5 * (f.U[i] + f.U[i + 1]), 0.0);
            flux_right = face * (f.V[i + 1] - f.V[i]) * rdx;
        }
        const double du = f.U[i] * (1.0 - f.U[i] - p.d * f.V[i]);
        const double dv = (flux_right - flux_left) * rdx + p.r * f.V[i] * (1.0 - f.V[i]);
        out.U[i] = std::clamp(f.U[i] + dt * du, 0.0, 1.0);
        out.V[i] = std::clamp(f.V[i] + dt * dv, 0.0, 1.0);
        flux_left = flux_right;
    }
    out.t = f.t + dt;
}

double front_position(const FieldPair& f, const Grid1D& g) {
    // rightmost crossing of V = 1/2
    for (int i = g.nx - 1; i > 0; --i) {
        if (f.V[i - 1] >= 0.5 && f.V[i] < 0.5) {
            const double t = (0.5 - f.V[i - 1]) / (f.V[i] - f.V[i - 1]);
            return g.x(i - 1) + t * g.dx;
        }
    }
    return g.x_min;
}

} // namespace

FieldPair step(const FieldPair& f, double dt, const Grid1D& g, const ModelParams& p) {
    if (dt > cfl_bound(f, g, p))
        throw CflViolationError("step: dt exceeds the CFL stability bound");
    FieldPair out;
    step_into(f, out, dt, g, p);
    return out;
}

PdeRunResult run(FieldPair initial, double t_end, const Grid1D& g, const ModelParams& p,
                 double out_dt, double safety,
                 const std::function<void(const FieldPair&)>& frame_cb) {
    if (!(t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
    const double buffer = 0.1 * (g.x_max - g.x_min);

    PdeRunResult res;
    res.fields = std::move(initial);
    FieldPair scratch;
    double next_frame = 0.0;

    while (true) {
        if (res.fields.t >= next_frame - 1e-12) {
            const double pos = front_position(res.fields, g);
            if (pos < g.x_min + buffer || pos > g.x_max - buffer)
                throw FrontHitBoundaryError("run: tracked front entered the boundary buffer");
            res.times.push_back(res.fields.t);
            res.front_positions.push_back(pos);
            if (frame_cb) frame_cb(res.fields);
            next_frame += out_dt;
        }
        if (res.fields.t >= t_end) break;
        const double dt =
            std::min({safety * cfl_bound(res.fields, g, p), t_end - res.fields.t,
                      next_frame - res.fields.t});
        step_into(res.fields, scratch, dt, g, p);
        std::swap(res.fields, scratch);
    }

    // least-squares slope of position vs time over the second half
    const std::size_t m = res.times.size();
    const std::size_t begin = m / 2;
    double st = 0, sp = 0;
    const std::size_t k = m - begin;
    for (std::size_t i = begin; i < m; ++i) {
        st += res.times[i];
        sp += res.front_positions[i];
    }
    const double mt = st / k, mp = sp / k;
    double stt = 0, stp = 0;
    for (std::size_t i = begin; i < m; ++i) {
        stt += (res.times[i] - mt) * (res.times[i] - mt);
        stp += (res.times[i] - mt) * (res.front_positions[i] - mp);
    }
    res.measured_speed = stt > 0.0 ? stp / stt : 0.0;
    return res;
}

} // namespace ifront
