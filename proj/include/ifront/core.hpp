#ifndef IFRONT_CORE_HPP
#define IFRONT_CORE_HPP

#include <array>
#include <vector>

namespace ifront {

/// Invasion regime, decided by the competition coefficient d.
enum class Regime { Homogeneous, Heterogeneous };

/// Model and wave parameters of the reduced two-species system.
/// d is the competition coefficient, r the tumor growth rate, c the wave
/// speed. All are dimensionless and strictly positive; d = 1 is non-generic
/// (only three equilibria) and is rejected at construction.
struct ModelParams {
    double d;
    double r;
    double c;
    Regime regime;

    ModelParams(double d_, double r_, double c_);

    bool homogeneous() const { return regime == Regime::Homogeneous; }
};

/// Linearization exponents derived from a parameter set.
///
///   lambda  decay rate of 1 - v at the left state (in y)
///   mu      growth rate of the u-perturbation at the left state
///   gamma   r/c, decay rate of the right tail in xi
///   eta     min(lambda, mu)
///   zeta    the negative eigenvalue at the left state
///   delta   sqrt(c^2 + 4r) (homogeneous) or sqrt(c^2 + 4dr) (heterogeneous)
///
/// degenerate flags the near-coincidence lambda ~ mu; seeding then switches
/// to the logarithmic expansion branch.
struct Rates {
    double lambda;
    double mu;
    double gamma;
    double eta;
    double zeta;
    double delta;
    bool degenerate;
};

Rates compute_rates(const ModelParams& params);

enum class EquilibriumKind { UnstableNode, Saddle, StableNode };

/// One uniform equilibrium of the reaction system together with the
/// eigenvalues of the linearization there.
struct EquilibriumReport {
    std::array<double, 2> point;
    EquilibriumKind kind;
    std::array<double, 2> eigenvalues;
};

/// The four uniform equilibria (0,0), (1,0), (0,1), (1-d,1) with their
/// stability types. Rejects d = 1.
std::vector<EquilibriumReport> classify_equilibria(double d, double r);

} // namespace ifront

#endif
