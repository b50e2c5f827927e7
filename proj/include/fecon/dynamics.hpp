#pragma once

#include <complex>
#include <vector>

namespace fecon::dynamics {

enum class MarketSide { Supply, Demand };

// Parameters of the market dynamics equation on one side. The demand side
// works in the mirrored variable m = -m_d >= 0.
struct DynamicsParams {
    MarketSide side = MarketSide::Supply;
    double kappa;            // reduced capacity, != 0, sign meaningful
    double c;                // complexity, > 0
    double M;                // maturity, != 0
    double payoff_ref = 1.0; // P_O for speculative solutions
    double m_ref = 0.0;      // m_O for speculative solutions

    void validate() const;
    double maturity_ratio() const { return M / c; }
};

enum class RootRegime { RealDistinct, RealRepeated, ComplexConjugate };

struct CharacteristicRoots {
    RootRegime regime;
    std::complex<double> first;
    std::complex<double> second;
};

// Sign reading of a zero-value payoff curve, from the side and the signs of
// kappa and the reference payoff.
enum class SpeculativeNature {
    Impoverishment,            // supply, kappa < 0, P_O > 0
    NegativeExternalityWork,   // supply, kappa < 0, P_O < 0
    SuccessfulSpeculation,     // supply, kappa > 0, P_O > 0
    EscalatingHarm,            // supply, kappa > 0, P_O < 0
    PaidCleanup,               // demand, kappa < 0, P_O > 0
    NegativePayoffInvestment,  // demand, kappa < 0, P_O < 0
    DecliningBenefactorReward, // demand, kappa > 0, P_O > 0
    ScaleDrivenPayoff,         // demand, kappa > 0, P_O < 0
    Degenerate,                // P_O = 0
};

struct SpeculativeResult {
    double payoff;
    SpeculativeNature nature;
};

// Zero-value payoff P_O * exp((m - m_O) / kappa) with its sign reading.
SpeculativeResult speculative_payoff(const DynamicsParams& params, double m);

// Constant work utility c/M at the payoff-value equilibrium.
double equilibrium_utility(const DynamicsParams& params, double rho);

// Roots of the side's characteristic polynomial. Supply roots satisfy
// kappa g^2 - g + (M/c) = 0, demand roots kappa g^2 - g - (M/c) = 0; demand
// solutions then carry the negated roots as exponents.
CharacteristicRoots characteristic_roots(const DynamicsParams& params);

enum class MaturitySign { Positive, Negative, Unspecified };

// Closed-form solution of the market dynamics equation. Complex-conjugate
// pairs are rendered as 2A exp(a m) cos(b m + phi0); a repeated root takes
// the (A + B m) exp(g m) form.
class Solution {
  public:
    double value(double m) const;
    double derivative(double m) const;
    double second_derivative(double m) const;

    // Residual of the governing equation at m: kappa r'' - r' + (M/c) r on
    // the supply side, kappa r'' + r' - (M/c) r on the demand side.
    double ode_residual(double m) const;

    RootRegime regime() const noexcept { return regime_; }
    MarketSide side() const noexcept { return side_; }
    double kappa() const noexcept { return kappa_; }
    double maturity_ratio() const noexcept { return ratio_; }
    MaturitySign maturity_condition() const noexcept { return maturity_; }

    // Exponents actually used by the rendered solution (demand negation
    // applied).
    std::complex<double> exponent_first() const noexcept { return exp1_; }
    std::complex<double> exponent_second() const noexcept { return exp2_; }

    friend Solution solve(const DynamicsParams& params, double amp1, double amp2);
    friend Solution canonical_solution(char kind, double kappa);

  private:
    Solution() = default;

    MarketSide side_ = MarketSide::Supply;
    double kappa_ = 1.0;
    double ratio_ = 1.0; // M/c
    RootRegime regime_ = RootRegime::RealDistinct;
    MaturitySign maturity_ = MaturitySign::Unspecified;
    std::complex<double> exp1_{0.0, 0.0};
    std::complex<double> exp2_{0.0, 0.0};
    // real modes: amp1 e^{r1 m} + amp2 e^{r2 m}; repeated: (amp1 + amp2 m) e^{r1 m}
    double amp1_ = 0.0, rate1_ = 0.0, amp2_ = 0.0, rate2_ = 0.0;
    // complex pair: 2 camp e^{cre m} cos(cim m + cphase)
    double camp_ = 0.0, cphase_ = 0.0, cre_ = 0.0, cim_ = 0.0;
};

// General solution for the given amplitudes. Real regimes read (amp1, amp2)
// as mode amplitudes; the complex regime reads them as (amplitude, phase).
Solution solve(const DynamicsParams& params, double amp1, double amp2);

// The four closed-form canonical solutions, kappa > 0:
//   a: e^{-phi m/k} + e^{m/(phi k)}      (maturities positive)
//   b: e^{phi m/k} + e^{-m/(phi k)}      (maturities negative)
//   c: 2 e^{m/2k} cos(sqrt(3) m / 2k)    (maturities positive)
//   d: 2 e^{-m/2k} cos(sqrt(3) m / 2k)   (maturities negative)
Solution canonical_solution(char kind, double kappa);

enum class FitStatus { PerfectFit, ZeroPriceCrossings, NoFit };

struct FitReport {
    FitStatus status;
    std::vector<double> crossings; // m where either curve crosses zero
};

// Compares a supply and a demand curve on a grid: a perfect fit means the
// curves coincide; otherwise the zero crossings of either curve are the only
// exchange points and are reported.
FitReport perfect_fit_check(const Solution& s, const Solution& d,
                            const std::vector<double>& m_grid);

// points values evenly spaced over [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int points);

// Default fit grid: 512 points on [0, 5 kappa].
std::vector<double> default_grid(double kappa);

const char* to_string(RootRegime regime);
const char* to_string(SpeculativeNature nature);
const char* to_string(FitStatus status);

} // namespace fecon::dynamics
