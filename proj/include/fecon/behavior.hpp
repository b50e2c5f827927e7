#pragma once

#include <optional>
#include <vector>

#include "fecon/dynamics.hpp"

namespace fecon::behavior {

// The probability weighting form loses monotonicity for very small
// exponents; inputs below this floor are rejected.
inline constexpr double kGammaFloor = 0.3;

// w_gamma(p) = p^gamma / (p^gamma + (1-p)^gamma)^(1/gamma).
// Exact at the endpoints, the identity at gamma = 1.
double weight(double gamma, double p);

// Unique interior solution of w_gamma(p) = p, by bisection. gamma = 1 is
// degenerate (every p is fixed) and rejected.
double fixed_point(double gamma);

enum class IterationVerdict {
    ConvergedToFixedPoint,
    TrappedAtZero,
    EscapedToOne,
    Oscillating, // anomaly: unreachable for a monotone weighting
};

struct IterationResult {
    std::vector<double> trajectory; // p0, p1, ...
    IterationVerdict verdict;
    double fixed_pt; // p* used for the verdict (p0 itself when gamma = 1)
};

// Iterates p_{n+1} = w_gamma(p_n) from p0 in (0,1). Below 1 the map pulls
// every interior start to p*; above 1 starts below p* drain to zero and
// starts above escape to one.
IterationResult iterate(double gamma, double p0, int max_iter = 10000, double tol = 1e-9);

enum class RegimeLabel { Weird, Poor, Custom };

// A (gamma, kappa) parameterization of the weighting operator with its
// fixed point. The named regimes tie gamma to the golden ratio:
// weird uses gamma = 1/(phi kappa), poor uses gamma = phi/kappa.
struct WeightingRegime {
    double gamma;
    double kappa;
    RegimeLabel label;
    std::optional<double> fixed_pt;

    static WeightingRegime weird(double kappa = 1.0);
    static WeightingRegime poor(double kappa = 1.0);
    static WeightingRegime custom(double gamma, double kappa = 1.0);
    // Classic single-experiment exponents for gains (0.61) and losses (0.69).
    static WeightingRegime gains_preset();
    static WeightingRegime losses_preset();
};

// Maturity-to-complexity ratio that cancels the weighting bias (gamma = 1)
// for the named regime: phi for weird, 1/phi for poor.
double bias_constraint(const WeightingRegime& regime);

// Normalized slope (1/rho)|drho/dm| of a dynamics solution at m; invariant
// under rho -> k rho for k > 0. A zero price is a pole and throws.
double bias_ratio(const dynamics::Solution& solution, double m);

enum class CycleFeeling { Overinvestment, Profit, Neutral };

// One business cycle scored against the weighting fixed point: the perceived
// gain or loss is outcome * (p* - p0).
struct CycleAccount {
    double p0;
    double p_star;
    double outcome;
    double subjective_delta;
    CycleFeeling feeling;
};

CycleAccount business_cycle(double p0, double gamma, double outcome);

const char* to_string(IterationVerdict verdict);
const char* to_string(RegimeLabel label);
const char* to_string(CycleFeeling feeling);

} // namespace fecon::behavior
