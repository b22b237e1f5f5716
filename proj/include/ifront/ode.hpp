#ifndef IFRONT_ODE_HPP
#define IFRONT_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "ifront/errors.hpp"

namespace ifront {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Step-control settings of the embedded Runge-Kutta pair.
struct OdeTolerances {
    double rtol = 1e-9;
    double atol = 1e-11;
    double event_tol = 1e-10; // root localization accuracy in the independent variable
    double min_step = 1e-12;
    double max_step = 0.5;
};

/// Continuous extension of one accepted Dormand-Prince step on [y0, y0+h].
/// The interpolant is the standard order-4 polynomial
///   s(theta) = c1 + theta*(c2 + (1-theta)*(c3 + theta*(c4 + (1-theta)*c5))).
template <std::size_t N>
struct DenseStep {
    double y0 = 0.0;
    double h = 0.0;
    Vec<N> c1{}, c2{}, c3{}, c4{}, c5{};

    double theta(double y) const { return (y - y0) / h; }

    double eval(std::size_t i, double th) const {
        const double th1 = 1.0 - th;
        return c1[i] + th * (c2[i] + th1 * (c3[i] + th * (c4[i] + th1 * c5[i])));
    }

    Vec<N> eval(double th) const {
        Vec<N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = eval(i, th);
        return out;
    }

    Vec<N> eval_at(double y) const { return eval(theta(y)); }
};

/// Explicit Dormand-Prince 5(4) stepper with PI-free elementary step-size
/// control and dense output. The caller drives the stepping loop, which keeps
/// event handling out of this class.
template <std::size_t N, class Rhs>
class Dopri5 {
public:
    Dopri5(Rhs rhs, OdeTolerances tol, double y, const Vec<N>& state)
        : rhs_(rhs), tol_(tol), y_(y), state_(state), k1_(rhs_(y, state)) {
        atol_.fill(tol_.atol);
        h_ = initial_step();
    }

    /// Per-component absolute tolerance override. Components riding an
    /// unstable mode need (near) pure relative control: absolute error
    /// committed while they are small is amplified exponentially later.
    void set_component_atol(std::size_t i, double atol) { atol_[i] = atol; }

    double y() const { return y_; }
    const Vec<N>& state() const { return state_; }
    double suggested_step() const { return h_; }

    /// Advance by one accepted step, not beyond y_limit. Fills `dense` with
    /// the continuous extension of the accepted step. Throws StepFailureError
    /// when the step size underflows.
    void step(double y_limit, DenseStep<N>& dense) {
        for (;;) {
            double h = std::min(h_, tol_.max_step);
            bool clipped = false;
            if (y_ + h >= y_limit) {
                h = y_limit - y_;
                clipped = true;
            }
            if (h < tol_.min_step) throw StepFailureError(y_);

            Vec<N> k2, k3, k4, k5, k6, k7, ynew;
            stages(h, k2, k3, k4, k5, k6, k7, ynew);

            const double err = error_norm(h, k2, k3, k4, k5, k6, k7, ynew);
            if (err <= 1.0) {
                fill_dense(h, k3, k4, k5, k6, k7, ynew, dense);
                y_ += h;
                state_ = ynew;
                k1_ = k7; // FSAL
                const double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-10, -0.2), 0.2, 5.0);
                if (!clipped) h_ = h * fac;
                return;
            }
            h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            if (h_ < tol_.min_step) throw StepFailureError(y_);
        }
    }

private:
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0,
                            d7 = 69997945.0 / 29380423.0;

    void stages(double h, Vec<N>& k2, Vec<N>& k3, Vec<N>& k4, Vec<N>& k5, Vec<N>& k6,
                Vec<N>& k7, Vec<N>& ynew) const {
        Vec<N> t;
        for (std::size_t i = 0; i < N; ++i) t[i] = state_[i] + h * a21 * k1_[i];
        k2 = rhs_(y_ + c2 * h, t);
        for (std::size_t i = 0; i < N; ++i)
            t[i] = state_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
        k3 = rhs_(y_ + c3 * h, t);
        for (std::size_t i = 0; i < N; ++i)
            t[i] = state_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs_(y_ + c4 * h, t);
        for (std::size_t i = 0; i < N; ++i)
            t[i] = state_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs_(y_ + c5 * h, t);
        for (std::size_t i = 0; i < N; ++i)
            t[i] = state_[i] +
                   h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = rhs_(y_ + h, t);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = state_[i] +
                      h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7 = rhs_(y_ + h, ynew);
    }

    double error_norm(double h, const Vec<N>& k2, const Vec<N>& k3, const Vec<N>& k4,
                      const Vec<N>& k5, const Vec<N>& k6, const Vec<N>& k7,
                      const Vec<N>& ynew) const {
        (void)k2;
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc =
                atol_[i] + tol_.rtol * std::max(std::abs(state_[i]), std::abs(ynew[i]));
            sum += (e / sc) * (e / sc);
        }
        return std::sqrt(sum / static_cast<double>(N));
    }

    void fill_dense(double h, const Vec<N>& k3, const Vec<N>& k4, const Vec<N>& k5,
                    const Vec<N>& k6, const Vec<N>& k7, const Vec<N>& ynew,
                    DenseStep<N>& dense) const {
        dense.y0 = y_;
        dense.h = h;
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = ynew[i] - state_[i];
            const double bspl = h * k1_[i] - ydiff;
            dense.c1[i] = state_[i];
            dense.c2[i] = ydiff;
            dense.c3[i] = bspl;
            dense.c4[i] = ydiff - h * k7[i] - bspl;
            dense.c5[i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                               d6 * k6[i] + d7 * k7[i]);
        }
    }

    double initial_step() const {
        // crude but safe: scale from the first derivative, refined by control
        double dmax = 0.0, smax = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            dmax = std::max(dmax, std::abs(k1_[i]));
            smax = std::max(smax, std::abs(state_[i]));
        }
        const double scale = tol_.atol + tol_.rtol * smax;
        double h = dmax > 0.0 ? 0.01 * std::max(scale / dmax, 1e-6) : 1e-6;
        return std::clamp(h, tol_.min_step * 10, tol_.max_step);
    }

    Rhs rhs_;
    OdeTolerances tol_;
    double y_;
    Vec<N> state_;
    Vec<N> k1_;
    Vec<N> atol_{};
    double h_ = 0.0;
};

/// Locate a sign change of g on one dense step by bisection, to an accuracy
/// of event_tol in the independent variable. g(ya) and g(yb) must have
/// opposite signs (zero counts as a sign).
template <std::size_t N, class G>
double refine_event(const DenseStep<N>& dense, G g, double ya, double yb, double event_tol) {
    double ga = g(dense.eval_at(ya));
    while (yb - ya > event_tol) {
        const double ym = 0.5 * (ya + yb);
        const double gm = g(dense.eval_at(ym));
        if ((ga <= 0.0) == (gm <= 0.0)) {
            ya = ym;
            ga = gm;
        } else {
            yb = ym;
        }
    }
    return 0.5 * (ya + yb);
}

} // namespace ifront

#endif
