#include "ifront/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ifront/errors.hpp"

namespace ifront {

namespace {

double lambda_of(const ModelParams& p) {
    return 0.5 * (-p.c + std::sqrt(p.c * p.c + 4.0 * p.r));
}

// adaptive Simpson with absolute tolerance
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// root of l(u) = target for the strictly increasing
// l(u) = (1+b) ln u - b ln(1-u) - ln(b+u), bisection to 1e-12 in u
double solve_u0_log(double target, double b) {
    double lo = 1e-300, hi = 1.0 - 1e-16;
    const auto ell = [b](double u) {
        return (1.0 + b) * std::log(u) - b * std::log1p(-u) - std::log(b + u);
    };
    if (ell(hi) < target) return hi;
    if (ell(lo) > target) return lo;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (ell(mid) > target ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double u0_normalized(double y, double b, double c) {
    // alpha = 1 normalization: target = -ln b + b(1+b) y / c
    return solve_u0_log(-std::log(b) + b * (1.0 + b) * y / c, b);
}

} // namespace

double PiecewiseV0::eval(double y) const {
    if (y >= 0.0) return v0_at_0 * std::exp(-c * y);
    if (y <= left_end) return 1.0 - std::exp(lambda * (y + y2));
    const double ys = y + y2; // unshifted coordinate of the integrated branch
    auto it = std::upper_bound(dense.begin(), dense.end(), ys,
                               [](double v, const DenseStep<2>& s) { return v < s.y0; });
    const DenseStep<2>& stp = it == dense.begin() ? *it : *(it - 1);
    return stp.eval(0, std::clamp(stp.theta(ys), 0.0, 1.0));
}

PiecewiseV0 fkpp_v0(const ModelParams& p, std::span<const double> grid) {
    if (!(p.c < 2.0 * std::sqrt(p.r)))
        throw std::invalid_argument("fkpp_v0: requires c < 2 sqrt(r) (weakly damped)");

    const double lam = lambda_of(p);
    const double y_seed = std::log(1e-10) / lam;
    const auto f = [&p](double, const Vec<2>& s) -> Vec<2> {
        return {s[1], -p.c * s[1] - p.r * s[0] * (1.0 - s[0])};
    };
    const auto psi = [&p](const Vec<2>& s) { return s[1] + p.c * s[0]; };

    OdeTolerances tol;
    const double e0 = std::exp(lam * y_seed);
    Dopri5<2, decltype(f)> stepper(f, tol, y_seed, {1.0 - e0, -lam * e0});

    PiecewiseV0 out;
    out.c = p.c;
    out.lambda = lam;
    std::vector<DenseStep<2>> steps;
    double y1 = 0.0;
    bool matched = false;
    const double y_cap = y_seed + 1000.0;
    while (stepper.y() < y_cap) {
        DenseStep<2> ds;
        const Vec<2> prev = stepper.state();
        const double yp = stepper.y();
        stepper.step(y_cap, ds);
        steps.push_back(ds);
        if (psi(prev) > 0.0 && psi(stepper.state()) <= 0.0) {
            y1 = refine_event(ds, psi, yp, stepper.y(), tol.event_tol);
            matched = true;
            break;
        }
        if (stepper.state()[0] <= 0.0)
            throw NumericalError("fkpp_v0: front crossed zero before psi vanished");
    }
    if (!matched) throw NumericalError("fkpp_v0: no zero of psi = v' + c v found");

    out.y2 = y1; // translate so the matching point sits at y = 0
    out.left_end = y_seed - y1;
    out.dense = std::move(steps);
    out.v0_at_0 = out.dense.back().eval(0, out.dense.back().theta(y1));

    out.grid.assign(grid.begin(), grid.end());
    out.values.reserve(out.grid.size());
    for (double y : out.grid) out.values.push_back(out.eval(y));
    return out;
}

double hat_v0(double y, const ModelParams& p) {
    const double lam = lambda_of(p);
    if (y <= 0.0) return 1.0 - p.c / (p.c + lam) * std::exp(lam * y);
    return lam / (p.c + lam) * std::exp(-p.c * y);
}

SlowFrontApprox make_slow_front_approx(const ModelParams& p, double alpha) {
    const double lam = lambda_of(p);
    const double v0hat0 = lam / (p.c + lam);
    if (!(v0hat0 > 1.0 / p.d))
        throw std::invalid_argument("slow-front approximation needs hat_v0(0) > 1/d");
    if (!(alpha > 0.0))
        throw std::invalid_argument("slow-front approximation needs alpha > 0");

    SlowFrontApprox out{0.0, alpha, 0.0, 0.0, p};
    out.b = p.d * v0hat0 - 1.0;
    out.kappa = p.c / out.b * std::log((1.0 + out.b) * alpha / out.b);

    // xi_star solves Phi(xi) = 0; Phi is strictly increasing on (-inf, 0)
    const auto Phi = [&](double xi) {
        return xi - p.c / (1.0 + out.b) * std::log(-std::expm1(out.b * xi / p.c)) - out.kappa;
    };
    double hi = -1e-8 * p.c / out.b;
    while (Phi(hi) <= 0.0) hi *= 0.5;
    double lo = std::min(out.kappa, hi) - 1.0;
    while (Phi(lo) >= 0.0) lo = hi + 2.0 * (lo - hi);
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (Phi(mid) < 0.0 ? lo : hi) = mid;
    }
    out.xi_star = 0.5 * (lo + hi);
    return out;
}

double solve_u0(double y, const SlowFrontApprox& a) {
    const double target = (1.0 + a.b) * std::log(a.alpha_cal) - std::log(a.b) +
                          a.b * (1.0 + a.b) * y / a.params.c;
    return solve_u0_log(target, a.b);
}

SlowFrontApprox calibrate_alpha(const ModelParams& p) {
    const double lam = lambda_of(p);
    if (!(p.c < 2.0 * std::sqrt(p.r)))
        throw std::invalid_argument("calibrate_alpha: requires c < 2 sqrt(r)");
    const double v0hat0 = lam / (p.c + lam);
    if (!(v0hat0 > 1.0 / p.d))
        throw std::invalid_argument("calibrate_alpha: requires hat_v0(0) > 1/d");
    const double b = p.d * v0hat0 - 1.0;

    // quadrature half-widths: grow until both integrand tails are < 1e-10
    double y_neg = 10.0, y_pos = 10.0;
    while (p.r * p.c / (p.c + lam) * std::exp(-lam * y_neg) > 1e-10) y_neg *= 1.5;
    while (p.r * v0hat0 * std::exp(-p.c * y_pos) > 1e-10) y_pos *= 1.5;

    const auto speed_integral = [&](double s) {
        const std::function<double(double)> g = [&](double y) {
            const double v = hat_v0(y, p);
            return p.r * v * (1.0 - v) * (1.0 - u0_normalized(y + s, b, p.c));
        };
        // split at the matching kink of hat_v0
        return integrate_interval(g, -y_neg, 0.0, 1e-12) +
               integrate_interval(g, 0.0, y_pos, 1e-12);
    };

    // the integral is strictly decreasing in the shift s; bracket then bisect
    double s_lo = 0.0, s_hi = 0.0;
    if (speed_integral(0.0) > p.c) {
        s_hi = 2.0;
        int k = 0;
        while (speed_integral(s_hi) > p.c) {
            s_lo = s_hi;
            s_hi *= 2.0;
            if (++k > 30) throw CalibrationFailedError("calibrate_alpha: no upper bracket");
        }
    } else {
        s_lo = -2.0;
        int k = 0;
        while (speed_integral(s_lo) < p.c) {
            s_hi = s_lo;
            s_lo *= 2.0;
            if (++k > 30)
                throw CalibrationFailedError(
                    "calibrate_alpha: speed integral cannot reach c (c too large "
                    "for the asymptotic regime)");
        }
    }

    double s_mid = 0.5 * (s_lo + s_hi);
    for (int i = 0; i < 200; ++i) {
        s_mid = 0.5 * (s_lo + s_hi);
        const double I = speed_integral(s_mid);
        if (std::abs(I - p.c) <= 1e-9 * p.c) break;
        (I > p.c ? s_lo : s_hi) = s_mid;
    }
    return make_slow_front_approx(p, std::exp(b * s_mid / p.c));
}

SharpProfile sharp_profile(const SlowFrontApprox& a, std::span<const double> xi_grid) {
    const ModelParams& p = a.params;
    const double lam = lambda_of(p);
    SharpProfile out;
    out.xi.assign(xi_grid.begin(), xi_grid.end());
    out.U0.reserve(out.xi.size());
    out.V0.reserve(out.xi.size());
    for (double xi : out.xi) {
        if (!(xi < 0.0))
            throw std::invalid_argument("sharp_profile: grid must be strictly negative");
        const double x = std::exp(a.b * xi / p.c);
        out.U0.push_back(a.b * x / (1.0 + a.b - x));
        const double phi =
            xi - p.c / (1.0 + a.b) * std::log(-std::expm1(a.b * xi / p.c)) - a.kappa;
        if (xi <= a.xi_star)
            out.V0.push_back(1.0 - p.c / (p.c + lam) * std::exp(lam * phi));
        else
            out.V0.push_back(lam / (p.c + lam) * std::exp(-p.c * phi));
    }
    return out;
}

Phi0Flatness phi0_flatness(const SlowFrontApprox& a) {
    const ModelParams& p = a.params;
    Phi0Flatness out;
    out.m = (1.0 + a.b) / (p.c * p.c);
    out.beta = std::exp((std::log(a.b) - std::log1p(a.b) -
                         (1.0 + a.b) * std::log(a.alpha_cal)) / a.b);

    // sample the curve on a geometric |xi| grid; the flat region near V = 0
    // lives at extremely small |xi|
    const int n = 2000;
    const double xi_refscale = p.c / a.b;
    std::vector<double> grid(n);
    const double lo = std::log(1e-160), hi = std::log(30.0);
    for (int i = 0; i < n; ++i)
        grid[i] = -xi_refscale * std::exp(hi + (lo - hi) * i / (n - 1.0));
    const SharpProfile sp = sharp_profile(a, grid);
    out.curve.reserve(n);
    for (int i = n - 1; i >= 0; --i) out.curve.push_back({sp.V0[i], 1.0 - sp.U0[i]});
    std::sort(out.curve.begin(), out.curve.end(),
              [](const auto& x, const auto& y) { return x[0] < y[0]; });
    return out;
}

MinimalSpeedBounds scalar_minimal_speed_bounds(double D, double r, double m) {
    if (!(D > 0.0) || !(r > 0.0) || !(m >= 1.0))
        throw std::invalid_argument("scalar_minimal_speed_bounds: need D,r > 0 and m >= 1");
    return {2.0 * D * r / ((m + 1.0) * (m + 2.0)), 2.0 * D * r / (m * (m + 1.0)),
            std::sqrt(2.0 * D * r) / m};
}

} // namespace ifront
