#pragma once

#include <string>

namespace fecon::exchange {

enum class Side { Supply, Demand };

// A reference point O = (rho_O, m_O, c_O, K_O, M_O) anchoring a supply or
// demand curve. Demand-side function counts are stored as magnitudes; `side`
// carries the orientation.
struct FrameReference {
    double rho_O;     // time cost at the reference, > 0
    double m_O;       // function count (magnitude on the demand side), >= 0
    double c_O;       // complexity of the reference curve, > 0
    double K_O = 0.0; // capital accumulated at the reference
    double M_O = 1.0; // maturity, != 0
    Side side = Side::Supply;

    static FrameReference supply(double rho, double m, double c, double K = 0.0, double M = 1.0);
    static FrameReference demand(double rho, double m, double c, double K = 0.0, double M = 1.0);

    void validate() const;
};

// An agreed exchange: two anchored frames, the agreed price rho_star and the
// homogeneous complexity/maturity pair of the traded product. c/M is the one
// ratio used on both sides.
struct ExchangeSpec {
    FrameReference supply;
    FrameReference demand;
    double rho_star; // agreed price, > 0
    double c;        // complexity of the exchanged product, > 0
    double M = 1.0;  // maturity of the exchanged product, != 0

    void validate() const;
};

enum class GrowthRegime { Virtuous, Erroneous, Mixed };

struct GrowthReport {
    double delta_K;   // capital created by the exchange
    double r;         // rho_Od / rho_Os
    double threshold; // growth threshold on r
    bool grows;       // delta_K > 0
    GrowthRegime regime;
};

enum class PriceTrend { InflationaryPressure, DeflationaryPressure, Neutral };

// Price along the supply curve anchored at `ref`, evaluated at m_s functions.
// Strictly increasing in m_s. Throws std::range_error on overflow.
double supply_price(const FrameReference& ref, double m_s);

// Price along the demand curve anchored at `ref`. Strictly decreasing in m_d.
double demand_price(const FrameReference& ref, double m_d);

// Capital accumulated along a supply curve of complexity c_s up to price
// rho_s, counted from the reference point.
double supply_capital(const FrameReference& ref, double rho_s, double c_s);

// Demand-side counterpart of supply_capital.
double demand_capital(const FrameReference& ref, double rho_d, double c_d);

// Global capital once the exchange settles at spec.rho_star. Equals
// supply_capital + demand_capital evaluated at the agreed price.
double global_capital(const ExchangeSpec& spec);

// Maturity-weighted growth threshold on the price ratio r.
double growth_threshold(const FrameReference& supply, const FrameReference& demand);

// Capital growth of the exchange, its threshold, and the maturity regime.
GrowthReport growth_report(const ExchangeSpec& spec);

// Direction in which the growth threshold moved between two exchange setups.
// A rising threshold presses prices up, a falling one presses them down.
PriceTrend inflation_diagnostic(const ExchangeSpec& before, const ExchangeSpec& after);

const char* to_string(GrowthRegime regime);
const char* to_string(PriceTrend trend);

} // namespace fecon::exchange
