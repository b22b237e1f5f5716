#include "ifront/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ifront {

ModelParams::ModelParams(double d_, double r_, double c_) : d(d_), r(r_), c(c_) {
    if (!(d > 0.0) || !(r > 0.0) || !(c > 0.0))
        throw std::invalid_argument("ModelParams: d, r, c must be strictly positive");
    if (d == 1.0)
        throw std::invalid_argument("ModelParams: d = 1 is non-generic and not supported");
    regime = d > 1.0 ? Regime::Homogeneous : Regime::Heterogeneous;
}

Rates compute_rates(const ModelParams& p) {
    Rates out{};
    const double dr = p.homogeneous() ? p.r : p.d * p.r;
    out.delta = std::sqrt(p.c * p.c + 4.0 * dr);
    out.lambda = 0.5 * (-p.c + out.delta);
    out.mu = p.homogeneous() ? (p.d - 1.0) / p.c : p.d * (1.0 - p.d) / p.c;
    out.gamma = p.r / p.c;
    out.eta = std::min(out.lambda, out.mu);
    out.zeta = -0.5 * (p.c + out.delta);
    out.degenerate =
        std::abs(out.lambda - out.mu) < 1e-6 * std::max(out.lambda, out.mu);
    return out;
}

namespace {

EquilibriumKind kind_from_eigenvalues(double e1, double e2) {
    if (e1 > 0.0 && e2 > 0.0) return EquilibriumKind::UnstableNode;
    if (e1 < 0.0 && e2 < 0.0) return EquilibriumKind::StableNode;
    return EquilibriumKind::Saddle;
}

EquilibriumReport report(double ubar, double vbar, double e1, double e2) {
    return {{ubar, vbar}, kind_from_eigenvalues(e1, e2), {e1, e2}};
}

} // namespace

std::vector<EquilibriumReport> classify_equilibria(double d, double r) {
    if (!(d > 0.0) || !(r > 0.0))
        throw std::invalid_argument("classify_equilibria: d, r must be positive");
    if (d == 1.0)
        throw std::invalid_argument(
            "classify_equilibria: d = 1 is non-generic (three equilibria only)");
    // Eigenvalues of the triangular linearization at each equilibrium.
    return {
        report(0.0, 0.0, 1.0, r),
        report(1.0, 0.0, -1.0, r),
        report(0.0, 1.0, 1.0 - d, -r),
        report(1.0 - d, 1.0, d - 1.0, -r),
    };
}

} // namespace ifront
