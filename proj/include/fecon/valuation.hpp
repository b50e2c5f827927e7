#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace fecon::valuation {

// Events over an integer-labelled ground set of at most 16 states, encoded as
// bit masks (bit i set = state i belongs to the event).
using EventMask = std::uint32_t;

inline constexpr int kMaxStates = 16;

// Monotone set function (Choquet capacity) stored as a full table over all
// subsets of the ground set. W(empty) = 0, W(S) = 1, monotone under
// set inclusion; violating tables are rejected at construction.
class Capacity {
  public:
    Capacity(int states, std::vector<double> table);

    // Probability measure from per-state point weights (must sum to 1).
    static Capacity additive(const std::vector<double>& point_weights);
    // W(A) = (|A| / |S|)^exponent; superadditive above 1, subadditive below.
    static Capacity power(int states, double exponent);

    int states() const noexcept { return states_; }
    EventMask full() const noexcept { return (EventMask{1} << states_) - 1; }
    double weight(EventMask event) const;
    double operator()(EventMask event) const { return weight(event); }

  private:
    int states_;
    std::vector<double> table_;
};

// Departments partition the state set; each function carries its own event
// partition. Cells are the pairwise intersections.
struct OrgStructure {
    int states = 0;
    std::vector<EventMask> departments;
    std::vector<std::vector<EventMask>> function_events;

    void validate() const;
};

enum class OutcomeKind { Marketing, Realized };

struct OutcomeSet {
    std::vector<double> outcomes;
    OutcomeKind kind = OutcomeKind::Marketing;
};

// Value slopes: gains are valued at rho/c_gain per outcome unit, losses at
// the stiffer rho/c_loss.
struct ValueParams {
    double rho;    // > 0
    double c_gain; // > 0
    double c_loss; // > 0, <= c_gain

    void validate() const;
};

struct WeightedOutcome {
    double epsilon;
    EventMask event;
};

enum class AdditivityClass { SubAdditive, Additive, SuperAdditive, Mixed };

// Outcome sum scaled by the inverse capability.
double payoff(const OutcomeSet& outcomes, double capability);

// Capacity-weighted value of a prospect whose events partition the ground
// set: sum of W(A_j) * value_fn(epsilon_j).
double prospect_value(const std::vector<WeightedOutcome>& prospect, const Capacity& w,
                      const std::function<double(double)>& value_fn);

// Cumulative capacity over every function x department x event cell.
double org_capacity(const OrgStructure& org, const Capacity& w);

// Relation of W(union) to the sum of W over parts, across every disjoint
// cell family the organization induces.
AdditivityClass additivity_check(const OrgStructure& org, const Capacity& w);

// ceil(c_org / c_tech): organizational capacity per mutualized technical
// component.
long profitability_complexity(double c_org, long c_tech);

// Two-slope value of a single realized outcome.
double outcome_value(double outcome, const ValueParams& params);

// Total value over a realized outcome set.
double project_value(const OutcomeSet& outcomes, const ValueParams& params);

const char* to_string(AdditivityClass cls);

} // namespace fecon::valuation
