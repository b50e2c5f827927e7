#include "fecon/exchange.hpp"

#include <cmath>
#include <stdexcept>

namespace fecon::exchange {

namespace {

constexpr double kNeutralTol = 1e-12; // absolute threshold drift treated as no move

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw std::range_error(std::string(what) + ": result is not finite");
    }
}

} // namespace

FrameReference FrameReference::supply(double rho, double m, double c, double K, double M) {
    FrameReference ref{rho, m, c, K, M, Side::Supply};
    ref.validate();
    return ref;
}

FrameReference FrameReference::demand(double rho, double m, double c, double K, double M) {
    FrameReference ref{rho, m, c, K, M, Side::Demand};
    ref.validate();
    return ref;
}

void FrameReference::validate() const {
    if (!(rho_O > 0.0)) throw std::domain_error("frame reference: rho_O must be > 0");
    if (!(c_O > 0.0)) throw std::domain_error("frame reference: c_O must be > 0");
    if (M_O == 0.0) throw std::domain_error("frame reference: M_O must be nonzero");
    if (!(m_O >= 0.0)) {
        throw std::domain_error("frame reference: m_O is a magnitude and must be >= 0");
    }
}

void ExchangeSpec::validate() const {
    supply.validate();
    demand.validate();
    if (supply.side != Side::Supply || demand.side != Side::Demand) {
        throw std::domain_error("exchange spec: sides are swapped");
    }
    if (!(rho_star > 0.0)) throw std::domain_error("exchange spec: rho_star must be > 0");
    if (!(c > 0.0)) throw std::domain_error("exchange spec: c must be > 0");
    if (M == 0.0) throw std::domain_error("exchange spec: M must be nonzero");
}

double supply_price(const FrameReference& ref, double m_s) {
    ref.validate();
    const double price = ref.rho_O * std::exp((m_s - ref.m_O) / ref.c_O);
    require_finite(price, "supply_price");
    return price;
}

double demand_price(const FrameReference& ref, double m_d) {
    ref.validate();
    const double price = ref.rho_O * std::exp((ref.m_O - m_d) / ref.c_O);
    require_finite(price, "demand_price");
    return price;
}

double supply_capital(const FrameReference& ref, double rho_s, double c_s) {
    ref.validate();
    if (!(rho_s > 0.0)) throw std::domain_error("supply_capital: rho_s must be > 0");
    return c_s * rho_s * (std::log(rho_s / ref.rho_O) + ref.m_O / ref.c_O) + ref.K_O;
}

double demand_capital(const FrameReference& ref, double rho_d, double c_d) {
    ref.validate();
    if (!(rho_d > 0.0)) throw std::domain_error("demand_capital: rho_d must be > 0");
    return c_d * rho_d * (ref.m_O / ref.c_O - std::log(rho_d / ref.rho_O)) + ref.K_O;
}

double global_capital(const ExchangeSpec& spec) {
    spec.validate();
    const FrameReference& s = spec.supply;
    const FrameReference& d = spec.demand;
    const double log_term = spec.c * std::log(spec.rho_star / s.rho_O) +
                            spec.c * std::log(d.rho_O / spec.rho_star);
    return spec.rho_star *
               (log_term + (spec.c / s.c_O) * s.m_O + (spec.c / d.c_O) * d.m_O) +
           s.K_O + d.K_O;
}

double growth_threshold(const FrameReference& supply, const FrameReference& demand) {
    supply.validate();
    demand.validate();
    return std::exp(-supply.M_O * supply.m_O / supply.c_O -
                    demand.M_O * demand.m_O / demand.c_O);
}

GrowthReport growth_report(const ExchangeSpec& spec) {
    spec.validate();
    const FrameReference& s = spec.supply;
    const FrameReference& d = spec.demand;

    const double r = d.rho_O / s.rho_O;
    const double legacy = s.M_O * s.m_O / s.c_O + d.M_O * d.m_O / d.c_O;
    const double delta_K = (spec.c / spec.M) * spec.rho_star * (std::log(r) + legacy);
    const double threshold = growth_threshold(s, d);

    GrowthRegime regime = GrowthRegime::Mixed;
    if (s.M_O > 0.0 && d.M_O > 0.0 && spec.M > 0.0) {
        regime = GrowthRegime::Virtuous;
    } else if (s.M_O < 0.0 && d.M_O < 0.0 && spec.M < 0.0) {
        regime = GrowthRegime::Erroneous;
    }

    return GrowthReport{delta_K, r, threshold, delta_K > 0.0, regime};
}

PriceTrend inflation_diagnostic(const ExchangeSpec& before, const ExchangeSpec& after) {
    const double t_before = growth_threshold(before.supply, before.demand);
    const double t_after = growth_threshold(after.supply, after.demand);
    const double shift = t_after - t_before;
    if (std::abs(shift) < kNeutralTol) return PriceTrend::Neutral;
    return shift > 0.0 ? PriceTrend::InflationaryPressure : PriceTrend::DeflationaryPressure;
}

const char* to_string(GrowthRegime regime) {
    switch (regime) {
        case GrowthRegime::Virtuous: return "virtuous";
        case GrowthRegime::Erroneous: return "erroneous";
        case GrowthRegime::Mixed: return "mixed";
    }
    return "?";
}

const char* to_string(PriceTrend trend) {
    switch (trend) {
        case PriceTrend::InflationaryPressure: return "inflationary";
        case PriceTrend::DeflationaryPressure: return "deflationary";
        case PriceTrend::Neutral: return "neutral";
    }
    return "?";
}

} // namespace fecon::exchange
