#include "fecon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fecon::dynamics {

namespace {

constexpr double kPhi = std::numbers::phi;

double signed_ratio(const DynamicsParams& p) {
    // The demand equation carries the value term with the opposite sign.
    const double q = p.maturity_ratio();
    return p.side == MarketSide::Supply ? q : -q;
}

} // namespace

void DynamicsParams::validate() const {
    if (kappa == 0.0) throw std::domain_error("dynamics: kappa must be nonzero");
    if (!(c > 0.0)) throw std::domain_error("dynamics: c must be > 0");
    if (M == 0.0) throw std::domain_error("dynamics: M must be nonzero");
}

SpeculativeResult speculative_payoff(const DynamicsParams& params, double m) {
    params.validate();
    const double value = params.payoff_ref * std::exp((m - params.m_ref) / params.kappa);

    SpeculativeNature nature = SpeculativeNature::Degenerate;
    if (params.payoff_ref != 0.0) {
        const bool positive_ref = params.payoff_ref > 0.0;
        if (params.side == MarketSide::Supply) {
            if (params.kappa < 0.0) {
                nature = positive_ref ? SpeculativeNature::Impoverishment
                                      : SpeculativeNature::NegativeExternalityWork;
            } else {
                nature = positive_ref ? SpeculativeNature::SuccessfulSpeculation
                                      : SpeculativeNature::EscalatingHarm;
            }
        } else {
            if (params.kappa < 0.0) {
                nature = positive_ref ? SpeculativeNature::PaidCleanup
                                      : SpeculativeNature::NegativePayoffInvestment;
            } else {
                nature = positive_ref ? SpeculativeNature::DecliningBenefactorReward
                                      : SpeculativeNature::ScaleDrivenPayoff;
            }
        }
    }
    return SpeculativeResult{value, nature};
}

double equilibrium_utility(const DynamicsParams& params, double rho) {
    params.validate();
    if (!(rho > 0.0)) throw std::domain_error("equilibrium_utility: rho must be > 0");
    return params.c / params.M;
}

CharacteristicRoots characteristic_roots(const DynamicsParams& params) {
    params.validate();
    const double q = signed_ratio(params);
    const double discriminant = 1.0 - 4.0 * params.kappa * q;

    CharacteristicRoots roots{};
    if (discriminant > 0.0) {
        const double sq = std::sqrt(discriminant);
        roots.regime = RootRegime::RealDistinct;
        roots.first = {(1.0 + sq) / (2.0 * params.kappa), 0.0};
        roots.second = {(1.0 - sq) / (2.0 * params.kappa), 0.0};
    } else if (discriminant == 0.0) {
        roots.regime = RootRegime::RealRepeated;
        roots.first = roots.second = {1.0 / (2.0 * params.kappa), 0.0};
    } else {
        const double im = std::sqrt(-discriminant) / (2.0 * params.kappa);
        roots.regime = RootRegime::ComplexConjugate;
        roots.first = {1.0 / (2.0 * params.kappa), im};
        roots.second = std::conj(roots.first);
    }
    return roots;
}

double Solution::value(double m) const {
    switch (regime_) {
        case RootRegime::RealDistinct:
            return amp1_ * std::exp(rate1_ * m) + amp2_ * std::exp(rate2_ * m);
        case RootRegime::RealRepeated:
            return (amp1_ + amp2_ * m) * std::exp(rate1_ * m);
        case RootRegime::ComplexConjugate:
            return 2.0 * camp_ * std::exp(cre_ * m) * std::cos(cim_ * m + cphase_);
    }
    return 0.0;
}

double Solution::derivative(double m) const {
    switch (regime_) {
        case RootRegime::RealDistinct:
            return amp1_ * rate1_ * std::exp(rate1_ * m) + amp2_ * rate2_ * std::exp(rate2_ * m);
        case RootRegime::RealRepeated:
            return (amp2_ + rate1_ * (amp1_ + amp2_ * m)) * std::exp(rate1_ * m);
        case RootRegime::ComplexConjugate: {
            const double phase = cim_ * m + cphase_;
            return 2.0 * camp_ * std::exp(cre_ * m) *
                   (cre_ * std::cos(phase) - cim_ * std::sin(phase));
        }
    }
    return 0.0;
}

double Solution::second_derivative(double m) const {
    switch (regime_) {
        case RootRegime::RealDistinct:
            return amp1_ * rate1_ * rate1_ * std::exp(rate1_ * m) +
                   amp2_ * rate2_ * rate2_ * std::exp(rate2_ * m);
        case RootRegime::RealRepeated:
            return (2.0 * amp2_ * rate1_ + rate1_ * rate1_ * (amp1_ + amp2_ * m)) *
                   std::exp(rate1_ * m);
        case RootRegime::ComplexConjugate: {
            const double phase = cim_ * m + cphase_;
            return 2.0 * camp_ * std::exp(cre_ * m) *
                   ((cre_ * cre_ - cim_ * cim_) * std::cos(phase) -
                    2.0 * cre_ * cim_ * std::sin(phase));
        }
    }
    return 0.0;
}

double Solution::ode_residual(double m) const {
    const double r = value(m);
    const double r1 = derivative(m);
    const double r2 = second_derivative(m);
    if (side_ == MarketSide::Supply) {
        return kappa_ * r2 - r1 + ratio_ * r;
    }
    return kappa_ * r2 + r1 - ratio_ * r;
}

Solution solve(const DynamicsParams& params, double amp1, double amp2) {
    const CharacteristicRoots roots = characteristic_roots(params);
    const double sign = params.side == MarketSide::Demand ? -1.0 : 1.0;

    Solution s;
    s.side_ = params.side;
    s.kappa_ = params.kappa;
    s.ratio_ = params.maturity_ratio();
    s.regime_ = roots.regime;
    s.exp1_ = sign * roots.first;
    s.exp2_ = sign * roots.second;

    switch (roots.regime) {
        case RootRegime::RealDistinct:
            s.amp1_ = amp1;
            s.rate1_ = s.exp1_.real();
            s.amp2_ = amp2;
            s.rate2_ = s.exp2_.real();
            break;
        case RootRegime::RealRepeated:
            s.amp1_ = amp1;
            s.amp2_ = amp2;
            s.rate1_ = s.rate2_ = s.exp1_.real();
            break;
        case RootRegime::ComplexConjugate:
            s.camp_ = amp1;
            s.cphase_ = amp2;
            s.cre_ = s.exp1_.real();
            s.cim_ = std::abs(s.exp1_.imag());
            break;
    }
    return s;
}

Solution canonical_solution(char kind, double kappa) {
    if (!(kappa > 0.0)) throw std::domain_error("canonical: kappa must be > 0");

    Solution s;
    s.side_ = MarketSide::Supply;
    switch (kind) {
        case 'a': // e^{-phi m/k} + e^{m/(phi k)}
            s.kappa_ = -kappa;
            s.ratio_ = 1.0 / kappa;
            s.maturity_ = MaturitySign::Positive;
            s.regime_ = RootRegime::RealDistinct;
            s.amp1_ = 1.0;
            s.rate1_ = -kPhi / kappa;
            s.amp2_ = 1.0;
            s.rate2_ = 1.0 / (kPhi * kappa);
            s.exp1_ = {s.rate1_, 0.0};
            s.exp2_ = {s.rate2_, 0.0};
            break;
        case 'b': // e^{phi m/k} + e^{-m/(phi k)}
            s.kappa_ = kappa;
            s.ratio_ = -1.0 / kappa;
            s.maturity_ = MaturitySign::Negative;
            s.regime_ = RootRegime::RealDistinct;
            s.amp1_ = 1.0;
            s.rate1_ = kPhi / kappa;
            s.amp2_ = 1.0;
            s.rate2_ = -1.0 / (kPhi * kappa);
            s.exp1_ = {s.rate1_, 0.0};
            s.exp2_ = {s.rate2_, 0.0};
            break;
        case 'c': // 2 e^{m/2k} cos(sqrt(3) m/2k)
            s.kappa_ = kappa;
            s.ratio_ = 1.0 / kappa;
            s.maturity_ = MaturitySign::Positive;
            s.regime_ = RootRegime::ComplexConjugate;
            s.camp_ = 1.0;
            s.cphase_ = 0.0;
            s.cre_ = 0.5 / kappa;
            s.cim_ = std::sqrt(3.0) / (2.0 * kappa);
            s.exp1_ = {s.cre_, s.cim_};
            s.exp2_ = {s.cre_, -s.cim_};
            break;
        case 'd': // 2 e^{-m/2k} cos(sqrt(3) m/2k)
            s.kappa_ = -kappa;
            s.ratio_ = -1.0 / kappa;
            s.maturity_ = MaturitySign::Negative;
            s.regime_ = RootRegime::ComplexConjugate;
            s.camp_ = 1.0;
            s.cphase_ = 0.0;
            s.cre_ = -0.5 / kappa;
            s.cim_ = std::sqrt(3.0) / (2.0 * kappa);
            s.exp1_ = {s.cre_, s.cim_};
            s.exp2_ = {s.cre_, -s.cim_};
            break;
        default:
            throw std::invalid_argument("canonical: kind must be one of a, b, c, d");
    }
    return s;
}

namespace {

// Bisection refinement of a sign change of f on [lo, hi].
template <typename F>
double refine_zero(const F& f, double lo, double hi) {
    double flo = f(lo);
    for (int iter = 0; iter < 200 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) != (fmid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

void collect_crossings(const Solution& curve, const std::vector<double>& grid,
                       std::vector<double>& out) {
    for (size_t k = 0; k + 1 < grid.size(); ++k) {
        const double a = curve.value(grid[k]);
        const double b = curve.value(grid[k + 1]);
        if (a == 0.0) {
            out.push_back(grid[k]);
        } else if ((a < 0.0) != (b < 0.0)) {
            out.push_back(refine_zero([&](double m) { return curve.value(m); }, grid[k],
                                      grid[k + 1]));
        }
    }
    if (!grid.empty() && curve.value(grid.back()) == 0.0) out.push_back(grid.back());
}

} // namespace

FitReport perfect_fit_check(const Solution& s, const Solution& d,
                            const std::vector<double>& m_grid) {
    if (m_grid.size() < 2) throw std::invalid_argument("fit check: grid too small");

    double deviation = 0.0;
    double scale = 1.0;
    for (double m : m_grid) {
        const double vs = s.value(m);
        const double vd = d.value(m);
        deviation = std::max(deviation, std::abs(vs - vd));
        scale = std::max({scale, std::abs(vs), std::abs(vd)});
    }
    if (deviation <= 1e-9 * scale) {
        return FitReport{FitStatus::PerfectFit, {}};
    }

    std::vector<double> crossings;
    collect_crossings(s, m_grid, crossings);
    collect_crossings(d, m_grid, crossings);
    std::sort(crossings.begin(), crossings.end());
    std::vector<double> unique;
    for (double m : crossings) {
        if (unique.empty() || m - unique.back() > 1e-9 * (1.0 + std::abs(m))) {
            unique.push_back(m);
        }
    }
    if (!unique.empty()) {
        return FitReport{FitStatus::ZeroPriceCrossings, std::move(unique)};
    }
    return FitReport{FitStatus::NoFit, {}};
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 2) throw std::invalid_argument("grid: at least two points required");
    if (!(hi > lo)) throw std::invalid_argument("grid: upper end must exceed lower end");
    std::vector<double> grid(static_cast<size_t>(points));
    const double step = (hi - lo) / (points - 1);
    for (int k = 0; k < points; ++k) grid[static_cast<size_t>(k)] = lo + step * k;
    grid.back() = hi;
    return grid;
}

std::vector<double> default_grid(double kappa) { return uniform_grid(0.0, 5.0 * kappa, 512); }

const char* to_string(RootRegime regime) {
    switch (regime) {
        case RootRegime::RealDistinct: return "real_distinct";
        case RootRegime::RealRepeated: return "real_repeated";
        case RootRegime::ComplexConjugate: return "complex_conjugate";
    }
    return "?";
}

const char* to_string(SpeculativeNature nature) {
    switch (nature) {
        case SpeculativeNature::Impoverishment: return "impoverishment";
        case SpeculativeNature::NegativeExternalityWork: return "negative_externality_work";
        case SpeculativeNature::SuccessfulSpeculation: return "successful_speculation";
        case SpeculativeNature::EscalatingHarm: return "escalating_harm";
        case SpeculativeNature::PaidCleanup: return "paid_cleanup";
        case SpeculativeNature::NegativePayoffInvestment: return "negative_payoff_investment";
        case SpeculativeNature::DecliningBenefactorReward:
            return "declining_benefactor_reward";
        case SpeculativeNature::ScaleDrivenPayoff: return "scale_driven_payoff";
        case SpeculativeNature::Degenerate: return "degenerate";
    }
    return "?";
}

const char* to_string(FitStatus status) {
    switch (status) {
        case FitStatus::PerfectFit: return "perfect_fit";
        case FitStatus::ZeroPriceCrossings: return "zero_price_crossings";
        case FitStatus::NoFit: return "no_fit";
    }
    return "?";
}

} // namespace fecon::dynamics
