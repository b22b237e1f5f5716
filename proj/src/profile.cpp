#include "ifront/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ifront/errors.hpp"

namespace ifront {

namespace {

// adaptive composite trapezoid of one dense-output component over [a, b]
double trapezoid_dense(const DenseStep<3>& step, int comp, double a, double b) {
    auto f = [&](double y) { return step.eval(comp, step.theta(y)); };
    double n = 1;
    double acc = 0.5 * (b - a) * (f(a) + f(b));
    for (int it = 0; it < 12; ++it) {
        const double h = (b - a) / (2.0 * n);
        double add = 0.0;
        for (double k = 0; k < n; ++k) add += f(a + (2.0 * k + 1.0) * h);
        const double next = 0.5 * acc + h * add;
        if (std::abs(next - acc) <= 1e-8 * std::abs(next) + 1e-16) return next;
        acc = next;
        n *= 2;
    }
    return acc;
}

// left analytic tail of int u dy (homogeneous) / int (u+d-1) dy (heterogeneous),
// evaluated from the first-order seeding expansion
double left_tail_integral(const Trajectory& traj, const ModelParams& p, const Rates& rt) {
    const State& s0 = traj.states.front();
    const double ys = traj.y_start;
    if (p.homogeneous()) return s0.u / rt.mu;
    if (rt.degenerate) {
        const double em = 1.0 - s0.v; // e^{mu ys}, lambda == mu
        return (s0.u - (1.0 - p.d)) / rt.mu + p.d * em / rt.mu;
    }
    const double K = p.d * rt.mu / (rt.mu - rt.lambda);
    const double t_lam = K * std::exp(rt.lambda * ys);
    const double t_mu = K * std::exp(rt.mu * ys);
    const double alpha_term = (s0.u - (1.0 - p.d)) - (t_lam - t_mu);
    return alpha_term / rt.mu + t_lam / rt.lambda - t_mu / rt.mu;
}

std::size_t median_index(std::vector<double>& v) { return v.size() / 2; }

// window of left-tail samples with values in [floor, cut], skipping the 2
// points closest to the seed; relaxes the cut until at least min_n points
// qualify. vals is increasing toward the transition.
std::pair<std::size_t, std::size_t> left_window(const std::vector<double>& vals, double floor,
                                                double cut, std::size_t min_n) {
    std::size_t begin = 2;
    while (begin < vals.size() && vals[begin] < floor) ++begin;
    for (; cut <= 0.11; cut *= 10.0) {
        std::size_t end = begin;
        while (end < vals.size() && vals[end] <= cut) ++end;
        if (end - begin >= min_n) return {begin, end};
    }
    throw TailsNotResolvedError("left tail window too short for exponent fitting");
}

// last quarter of the samples, excluding the 2 boundary-most points
std::pair<std::size_t, std::size_t> right_window(std::size_t n) {
    if (n < 48) throw TailsNotResolvedError("too few samples for right-tail fitting");
    const std::size_t w = n / 4;
    return {n - 2 - w, n - 2};
}

} // namespace

TailFit fit_tail_exponent(std::span<const double> xs, std::span<const double> ys,
                          std::size_t begin, std::size_t end) {
    if (end > xs.size() || begin >= end || xs.size() != ys.size())
        throw std::invalid_argument("fit_tail_exponent: bad window");
    const std::size_t n = end - begin;
    if (n < 10) throw std::invalid_argument("fit_tail_exponent: window needs >= 10 points");

    double sx = 0, sy = 0;
    for (std::size_t i = begin; i < end; ++i) {
        if (!(ys[i] > 0.0))
            throw std::invalid_argument("fit_tail_exponent: nonpositive ys in window");
        sx += xs[i];
        sy += std::log(ys[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const double dx = xs[i] - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(ys[i]) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_tail_exponent: degenerate xs window");

    TailFit fit;
    fit.rate = sxy / sxx;
    fit.n = n;
    fit.x_lo = xs[begin];
    fit.x_hi = xs[end - 1];
    double ss = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const double res = std::log(ys[i]) - my - fit.rate * (xs[i] - mx);
        ss += res * res;
    }
    fit.residual_norm = std::sqrt(ss / n);
    return fit;
}

FrontProfile reconstruct(const Trajectory& traj, const ModelParams& p) {
    if (traj.v_cross_y || traj.termination.kind != Termination::BudgetExhausted)
        throw std::invalid_argument("reconstruct: trajectory is not a connecting orbit");
    const Rates rt = compute_rates(p);

    FrontProfile prof(p);
    prof.y.push_back(traj.y_start);
    prof.U.push_back(traj.states.front().u);
    prof.V.push_back(traj.states.front().v);

    // refined grid: subdivide each accepted step so the output resolves both
    // coordinates (dy <= max_step is already guaranteed; dxi <= 0.02 here)
    const double dxi_max = 0.02;
    std::vector<double> integral; // prefix integral of u (or u+d-1) from y_start
    integral.push_back(0.0);
    const double shift = p.homogeneous() ? 0.0 : p.d - 1.0;

    double acc = 0.0;
    for (const DenseStep<3>& stp : traj.dense) {
        const double y1 = stp.y0;
        const double y2 = std::min(stp.y0 + stp.h, traj.y_end);
        if (y2 <= y1) continue;
        const double umid = stp.eval(0, stp.theta(0.5 * (y1 + y2)));
        const int nsub = std::max(1, static_cast<int>(
            std::ceil((y2 - y1) * std::max(1.0 - umid, 0.0) / dxi_max)));
        for (int k = 1; k <= nsub; ++k) {
            const double a = y1 + (y2 - y1) * (k - 1) / nsub;
            const double b = y1 + (y2 - y1) * k / nsub;
            acc += trapezoid_dense(stp, 0, a, b) + shift * (b - a);
            const Vec<3> s = stp.eval_at(b);
            if (s[0] >= 1.0)
                throw std::invalid_argument("reconstruct: u reached 1, map not invertible");
            prof.y.push_back(b);
            prof.U.push_back(s[0]);
            prof.V.push_back(s[1]);
            integral.push_back(acc);
        }
    }

    const double tail = left_tail_integral(traj, p, rt);
    const double slope = p.homogeneous() ? 1.0 : p.d;
    prof.xi.resize(prof.y.size());
    for (std::size_t i = 0; i < prof.y.size(); ++i)
        prof.xi[i] = slope * prof.y[i] - (tail + integral[i]);

    // normalize: xi = 0 where U crosses the midpoint of its range
    const double u_left = p.homogeneous() ? 0.0 : 1.0 - p.d;
    const double u_mid = 0.5 * (u_left + 1.0);
    auto it = std::lower_bound(prof.U.begin(), prof.U.end(), u_mid);
    if (it == prof.U.begin() || it == prof.U.end())
        throw NumericalError("reconstruct: profile does not span the transition");
    const std::size_t j = static_cast<std::size_t>(it - prof.U.begin());
    const double t = (u_mid - prof.U[j - 1]) / (prof.U[j] - prof.U[j - 1]);
    const double xi0 = prof.xi[j - 1] + t * (prof.xi[j] - prof.xi[j - 1]);
    for (double& x : prof.xi) x -= xi0;

    // diagnostics
    const std::size_t n = prof.xi.size();
    std::vector<double> one_minus_V(n), one_minus_U(n), u_offset(n);
    for (std::size_t i = 0; i < n; ++i) {
        one_minus_V[i] = 1.0 - prof.V[i];
        one_minus_U[i] = 1.0 - prof.U[i];
        u_offset[i] = prof.U[i] - u_left;
    }

    const auto [l0, l1] = left_window(one_minus_V, 0.0, 1e-3, 10);
    prof.diagnostics.tail_lambda = fit_tail_exponent(prof.xi, one_minus_V, l0, l1);
    const auto [m0, m1] = left_window(u_offset, 1e-7, 1e-3, 10);
    prof.diagnostics.tail_mu = fit_tail_exponent(prof.xi, u_offset, m0, m1);
    const auto [r0, r1] = right_window(n);
    prof.diagnostics.tail_gamma = fit_tail_exponent(prof.xi, one_minus_U, r0, r1);

    std::vector<double> ratios;
    ratios.reserve(r1 - r0);
    for (std::size_t i = r0; i < r1; ++i) ratios.push_back(prof.V[i] / one_minus_U[i]);
    std::nth_element(ratios.begin(), ratios.begin() + median_index(ratios), ratios.end());
    prof.diagnostics.tail_ratio = ratios[median_index(ratios)];

    prof.diagnostics.speed_residual = speed_residual(prof);
    prof.diagnostics.center_manifold_residual = center_tail_check(traj, p);
    return prof;
}

double speed_residual(const FrontProfile& prof) {
    const std::size_t n = prof.xi.size();
    if (n < 2) throw std::invalid_argument("speed_residual: empty profile");
    const auto vf = [&](std::size_t i) { return prof.V[i] * (1.0 - prof.V[i]); };
    if (vf(0) > 1e-2 || vf(n - 1) > 1e-2)
        throw TailsNotResolvedError("speed_residual: V(1-V) not small at the grid ends");

    double integral = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        integral += 0.5 * (vf(i) + vf(i - 1)) * (prof.xi[i] - prof.xi[i - 1]);

    // analytic tail corrections from fitted exponentials, applied only when the
    // corresponding tail is genuinely resolved
    const double E0 = 1.0 - prof.V[0];
    if (E0 > 0.0 && E0 <= 1e-2) {
        std::vector<double> omv(prof.V.size());
        for (std::size_t i = 0; i < n; ++i) omv[i] = 1.0 - prof.V[i];
        const auto [a, b] = left_window(omv, 0.0, 1e-3, 10);
        const double lam = fit_tail_exponent(prof.xi, omv, a, b).rate;
        if (lam > 0.0) integral += E0 / lam - E0 * E0 / (2.0 * lam);
    }
    const double VN = prof.V[n - 1];
    if (VN > 0.0 && VN <= 1e-2) {
        const auto [a, b] = right_window(n);
        const double gam = fit_tail_exponent(prof.xi, prof.V, a, b).rate;
        if (gam < 0.0) integral += VN / (-gam) - VN * VN / (2.0 * (-gam));
    }

    return std::abs(prof.params.r * integral - prof.params.c) / prof.params.c;
}

double tail_ratio(const FrontProfile& prof) {
    const auto [r0, r1] = right_window(prof.xi.size());
    std::vector<double> ratios;
    ratios.reserve(r1 - r0);
    for (std::size_t i = r0; i < r1; ++i) {
        const double den = 1.0 - prof.U[i];
        if (!(den > 0.0)) throw TailsNotResolvedError("tail_ratio: 1-U not positive");
        ratios.push_back(prof.V[i] / den);
    }
    std::nth_element(ratios.begin(), ratios.begin() + median_index(ratios), ratios.end());
    return ratios[median_index(ratios)];
}

std::vector<std::array<double, 2>> effective_diffusion(const FrontProfile& prof) {
    std::vector<std::array<double, 2>> curve;
    curve.reserve(prof.xi.size());
    for (std::size_t i = prof.xi.size(); i-- > 0;)
        curve.push_back({prof.V[i], 1.0 - prof.U[i]});
    return curve; // V decreasing in xi, so reversed order is ascending in V
}

double center_tail_check(const Trajectory& traj, const ModelParams& p) {
    if (traj.termination.kind != Termination::BudgetExhausted)
        throw std::invalid_argument("center_tail_check: needs a connecting trajectory");
    if (traj.y_end < 50.0 / p.c)
        throw TailsNotResolvedError("center_tail_check: y_end below 50/c");

    const double y_lo = traj.y_end / 10.0;
    double worst = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < traj.ys.size(); ++i) {
        if (traj.ys[i] < y_lo) continue;
        const State& s = traj.states[i];
        const double wt = s.w / p.c;
        const double vt = s.v + s.w / p.c;
        const double ut = 1.0 - s.u;
        if (wt == 0.0) continue;
        worst = std::max(worst, std::abs(wt + p.r / (p.c * p.c) * ut * vt) / std::abs(wt));
        seen = true;
    }
    if (!seen) throw TailsNotResolvedError("center_tail_check: no samples in the last decade");

    const State& se = traj.back();
    const double ye = traj.y_end;
    worst = std::max(worst, std::abs((1.0 - se.u) * ye * p.r / p.c - 1.0));
    worst = std::max(worst,
                     std::abs((se.v + se.w / p.c) * ye * p.d * p.r / (p.c * (1.0 + p.r)) - 1.0));
    return worst;
}

} // namespace ifront
