#include "fecon/behavior.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fecon::behavior {

namespace {

constexpr double kPhi = std::numbers::phi;

void require_gamma(double gamma) {
    if (!(gamma >= kGammaFloor)) {
        throw std::domain_error("weighting: gamma below the monotonicity floor 0.3");
    }
}

} // namespace

double weight(double gamma, double p) {
    require_gamma(gamma);
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::domain_error("weighting: p must lie in [0, 1]");
    }
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    const double pg = std::pow(p, gamma);
    const double qg = std::pow(1.0 - p, gamma);
    return pg / std::pow(pg + qg, 1.0 / gamma);
}

double fixed_point(double gamma) {
    require_gamma(gamma);
    if (gamma == 1.0) {
        throw std::domain_error("fixed_point: gamma = 1 fixes the whole interval");
    }
    double lo = 1e-9;
    double hi = 1.0 - 1e-9;
    double flo = weight(gamma, lo) - lo;
    const double fhi = weight(gamma, hi) - hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw std::domain_error("fixed_point: no interior sign change");
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = weight(gamma, mid) - mid;
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

IterationResult iterate(double gamma, double p0, int max_iter, double tol) {
    require_gamma(gamma);
    if (!(p0 > 0.0) || !(p0 < 1.0)) {
        throw std::domain_error("iterate: p0 must lie in (0, 1)");
    }
    if (max_iter < 1) throw std::invalid_argument("iterate: max_iter must be >= 1");

    IterationResult result;
    if (gamma == 1.0) {
        // Every point is fixed; the trajectory never moves.
        result.trajectory = {p0};
        result.verdict = IterationVerdict::ConvergedToFixedPoint;
        result.fixed_pt = p0;
        return result;
    }

    const double p_star = fixed_point(gamma);
    result.fixed_pt = p_star;
    result.trajectory.reserve(16);
    result.trajectory.push_back(p0);

    double p = p0;
    for (int n = 0; n < max_iter; ++n) {
        p = weight(gamma, p);
        result.trajectory.push_back(p);
        if (std::abs(p - p_star) <= tol) {
            result.verdict = IterationVerdict::ConvergedToFixedPoint;
            return result;
        }
        // The endpoints only absorb when the interior fixed point repels.
        if (gamma > 1.0 && p <= tol) {
            result.verdict = IterationVerdict::TrappedAtZero;
            return result;
        }
        if (gamma > 1.0 && p >= 1.0 - tol) {
            result.verdict = IterationVerdict::EscapedToOne;
            return result;
        }
    }

    // Budget exhausted: a monotone trajectory has a known limit, anything
    // else is an anomaly of the map.
    bool increasing = false;
    bool decreasing = false;
    for (size_t k = 0; k + 1 < result.trajectory.size(); ++k) {
        const double step = result.trajectory[k + 1] - result.trajectory[k];
        if (step > 0.0) increasing = true;
        if (step < 0.0) decreasing = true;
    }
    if (increasing && decreasing) {
        result.verdict = IterationVerdict::Oscillating;
    } else if (gamma < 1.0) {
        result.verdict = IterationVerdict::ConvergedToFixedPoint;
    } else {
        result.verdict = p < p_star ? IterationVerdict::TrappedAtZero
                                    : IterationVerdict::EscapedToOne;
    }
    return result;
}

WeightingRegime WeightingRegime::weird(double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("regime: kappa must be > 0");
    WeightingRegime regime{1.0 / (kPhi * kappa), kappa, RegimeLabel::Weird, std::nullopt};
    require_gamma(regime.gamma);
    if (regime.gamma != 1.0) regime.fixed_pt = fixed_point(regime.gamma);
    return regime;
}

WeightingRegime WeightingRegime::poor(double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("regime: kappa must be > 0");
    WeightingRegime regime{kPhi / kappa, kappa, RegimeLabel::Poor, std::nullopt};
    require_gamma(regime.gamma);
    if (regime.gamma != 1.0) regime.fixed_pt = fixed_point(regime.gamma);
    return regime;
}

WeightingRegime WeightingRegime::custom(double gamma, double kappa) {
    require_gamma(gamma);
    if (!(kappa > 0.0)) throw std::domain_error("regime: kappa must be > 0");
    WeightingRegime regime{gamma, kappa, RegimeLabel::Custom, std::nullopt};
    if (gamma != 1.0) regime.fixed_pt = fixed_point(gamma);
    return regime;
}

WeightingRegime WeightingRegime::gains_preset() { return custom(0.61); }

WeightingRegime WeightingRegime::losses_preset() { return custom(0.69); }

double bias_constraint(const WeightingRegime& regime) {
    switch (regime.label) {
        case RegimeLabel::Weird: return kPhi;
        case RegimeLabel::Poor: return 1.0 / kPhi;
        case RegimeLabel::Custom: break;
    }
    throw std::domain_error("bias_constraint: no constraint for a custom regime");
}

double bias_ratio(const dynamics::Solution& solution, double m) {
    const double rho = solution.value(m);
    if (rho == 0.0) {
        throw std::domain_error("bias_ratio: zero price is a pole of the normalized slope");
    }
    return std::abs(solution.derivative(m)) / rho;
}

CycleAccount business_cycle(double p0, double gamma, double outcome) {
    if (!(p0 > 0.0) || !(p0 < 1.0)) {
        throw std::domain_error("business_cycle: p0 must lie in (0, 1)");
    }
    const double p_star = fixed_point(gamma);
    const double delta = outcome * (p_star - p0);
    CycleFeeling feeling = CycleFeeling::Neutral;
    if (p0 < p_star) {
        feeling = CycleFeeling::Profit;
    } else if (p0 > p_star) {
        feeling = CycleFeeling::Overinvestment;
    }
    return CycleAccount{p0, p_star, outcome, delta, feeling};
}

const char* to_string(IterationVerdict verdict) {
    switch (verdict) {
        case IterationVerdict::ConvergedToFixedPoint: return "converged_to_fixed_point";
        case IterationVerdict::TrappedAtZero: return "trapped_at_zero";
        case IterationVerdict::EscapedToOne: return "escaped_to_one";
        case IterationVerdict::Oscillating: return "oscillating";
    }
    return "?";
}

const char* to_string(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::Weird: return "weird";
        case RegimeLabel::Poor: return "poor";
        case RegimeLabel::Custom: return "custom";
    }
    return "?";
}

const char* to_string(CycleFeeling feeling) {
    switch (feeling) {
        case CycleFeeling::Overinvestment: return "overinvestment";
        case CycleFeeling::Profit: return "profit";
        case CycleFeeling::Neutral: return "neutral";
    }
    return "?";
}

} // namespace fecon::behavior
