#include "fecon/valuation.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "fecon/errors.hpp"

namespace fecon::valuation {

namespace {

constexpr double kTableTol = 1e-12;

// Relation of a whole to the sum over its disjoint parts.
enum class Relation { Below, Equal, Above };

Relation relate(double whole, double parts) {
    const double tol = kTableTol * std::max(1.0, std::abs(whole));
    if (std::abs(whole - parts) <= tol) return Relation::Equal;
    return whole > parts ? Relation::Above : Relation::Below;
}

} // namespace

Capacity::Capacity(int states, std::vector<double> table)
    : states_(states), table_(std::move(table)) {
    if (states_ < 1 || states_ > kMaxStates) {
        throw std::domain_error("capacity: ground set must have 1..16 states");
    }
    const size_t expected = size_t{1} << states_;
    if (table_.size() != expected) {
        throw std::invalid_argument("capacity: table must cover every subset");
    }
    if (std::abs(table_[0]) > kTableTol) {
        throw std::domain_error("capacity: weight of the empty event must be 0");
    }
    if (std::abs(table_[expected - 1] - 1.0) > kTableTol) {
        throw std::domain_error("capacity: weight of the full event must be 1");
    }
    // Single-element extensions suffice for full monotonicity.
    for (EventMask mask = 0; mask < expected; ++mask) {
        for (int s = 0; s < states_; ++s) {
            const EventMask bit = EventMask{1} << s;
            if (mask & bit) continue;
            if (table_[mask] > table_[mask | bit] + kTableTol) {
                throw std::domain_error("capacity: table is not monotone under inclusion");
            }
        }
    }
}

Capacity Capacity::additive(const std::vector<double>& point_weights) {
    const int n = static_cast<int>(point_weights.size());
    if (n < 1 || n > kMaxStates) {
        throw std::domain_error("capacity: ground set must have 1..16 states");
    }
    for (double w : point_weights) {
        if (!(w >= 0.0)) throw std::domain_error("capacity: point weights must be >= 0");
    }
    const size_t size = size_t{1} << n;
    std::vector<double> table(size, 0.0);
    for (EventMask mask = 1; mask < size; ++mask) {
        double sum = 0.0;
        for (int s = 0; s < n; ++s) {
            if (mask & (EventMask{1} << s)) sum += point_weights[static_cast<size_t>(s)];
        }
        table[mask] = sum;
    }
    if (std::abs(table[size - 1] - 1.0) > 1e-9) {
        throw std::domain_error("capacity: point weights must sum to 1");
    }
    table[size - 1] = 1.0;
    return Capacity(n, std::move(table));
}

Capacity Capacity::power(int states, double exponent) {
    if (!(exponent > 0.0)) throw std::domain_error("capacity: exponent must be > 0");
    if (states < 1 || states > kMaxStates) {
        throw std::domain_error("capacity: ground set must have 1..16 states");
    }
    const size_t size = size_t{1} << states;
    std::vector<double> table(size, 0.0);
    for (EventMask mask = 0; mask < size; ++mask) {
        const double frac = static_cast<double>(std::popcount(mask)) / states;
        table[mask] = std::pow(frac, exponent);
    }
    table[size - 1] = 1.0;
    return Capacity(states, std::move(table));
}

double Capacity::weight(EventMask event) const {
    if (event > full()) throw std::out_of_range("capacity: event outside the ground set");
    return table_[event];
}

void OrgStructure::validate() const {
    if (states < 1 || states > kMaxStates) {
        throw ValidationError(ErrorKind::NonPartition, "org: ground set must have 1..16 states");
    }
    const EventMask all = (EventMask{1} << states) - 1;

    auto check_partition = [&](const std::vector<EventMask>& parts, const char* what) {
        EventMask seen = 0;
        for (EventMask part : parts) {
            if (part & ~all) {
                throw ValidationError(ErrorKind::NonPartition,
                                      std::string(what) + ": event outside the ground set");
            }
            if (part & seen) {
                throw ValidationError(ErrorKind::NonPartition,
                                      std::string(what) + ": events overlap");
            }
            seen |= part;
        }
        if (seen != all) {
            throw ValidationError(ErrorKind::NonPartition,
                                  std::string(what) + ": events do not cover the ground set");
        }
    };

    check_partition(departments, "org departments");
    if (function_events.empty()) {
        throw ValidationError(ErrorKind::NonPartition, "org: no function events");
    }
    for (const auto& events : function_events) {
        check_partition(events, "org function events");
    }
}

double payoff(const OutcomeSet& outcomes, double capability) {
    if (outcomes.outcomes.empty()) {
        throw std::invalid_argument("payoff: outcome list must be non-empty");
    }
    if (!(capability > 0.0)) throw std::domain_error("payoff: capability must be > 0");
    double sum = 0.0;
    for (double e : outcomes.outcomes) sum += e;
    return sum / capability;
}

double prospect_value(const std::vector<WeightedOutcome>& prospect, const Capacity& w,
                      const std::function<double(double)>& value_fn) {
    if (prospect.empty()) {
        throw ValidationError(ErrorKind::NonPartition, "prospect: no events");
    }
    EventMask seen = 0;
    for (const auto& [epsilon, event] : prospect) {
        if (event & ~w.full()) {
            throw ValidationError(ErrorKind::NonPartition,
                                  "prospect: event outside the ground set");
        }
        if (event & seen) {
            throw ValidationError(ErrorKind::NonPartition, "prospect: events overlap");
        }
        seen |= event;
    }
    if (seen != w.full()) {
        throw ValidationError(ErrorKind::NonPartition,
                              "prospect: events do not partition the ground set");
    }
    double total = 0.0;
    for (const auto& [epsilon, event] : prospect) {
        total += w(event) * value_fn(epsilon);
    }
    return total;
}

double org_capacity(const OrgStructure& org, const Capacity& w) {
    org.validate();
    if (w.states() != org.states) {
        throw std::invalid_argument("org_capacity: capacity ground set mismatch");
    }
    double total = 0.0;
    for (const auto& events : org.function_events) {
        for (EventMask dept : org.departments) {
            for (EventMask event : events) {
                total += w(event & dept);
            }
        }
    }
    return total;
}

AdditivityClass additivity_check(const OrgStructure& org, const Capacity& w) {
    org.validate();
    if (w.states() != org.states) {
        throw std::invalid_argument("additivity_check: capacity ground set mismatch");
    }

    bool below = false;
    bool above = false;
    auto compare = [&](EventMask whole, double parts_sum) {
        switch (relate(w(whole), parts_sum)) {
            case Relation::Above: above = true; break;
            case Relation::Below: below = true; break;
            case Relation::Equal: break;
        }
    };

    // Departments as parts of the ground set.
    {
        double parts = 0.0;
        for (EventMask dept : org.departments) parts += w(dept);
        compare(w.full(), parts);
    }
    for (const auto& events : org.function_events) {
        // Events as parts of the ground set.
        double event_sum = 0.0;
        for (EventMask event : events) event_sum += w(event);
        compare(w.full(), event_sum);

        // Department-level cells of each event, and event-level cells of
        // each department.
        for (EventMask event : events) {
            double cell_sum = 0.0;
            for (EventMask dept : org.departments) cell_sum += w(event & dept);
            compare(event, cell_sum);
        }
        for (EventMask dept : org.departments) {
            double cell_sum = 0.0;
            for (EventMask event : events) cell_sum += w(event & dept);
            compare(dept, cell_sum);
        }
    }

    if (above && below) return AdditivityClass::Mixed;
    if (above) return AdditivityClass::SuperAdditive;
    if (below) return AdditivityClass::SubAdditive;
    return AdditivityClass::Additive;
}

long profitability_complexity(double c_org, long c_tech) {
    if (!(c_org >= 0.0)) throw std::domain_error("profitability: c_org must be >= 0");
    if (c_tech < 1) throw std::domain_error("profitability: c_tech must be >= 1");
    return static_cast<long>(std::ceil(c_org / static_cast<double>(c_tech)));
}

void ValueParams::validate() const {
    if (!(rho > 0.0)) throw std::domain_error("value params: rho must be > 0");
    if (!(c_gain > 0.0)) throw std::domain_error("value params: c_gain must be > 0");
    if (!(c_loss > 0.0)) throw std::domain_error("value params: c_loss must be > 0");
    if (c_loss > c_gain) {
        throw std::domain_error("value params: c_loss must not exceed c_gain");
    }
}

double outcome_value(double outcome, const ValueParams& params) {
    params.validate();
    const double complexity = outcome >= 0.0 ? params.c_gain : params.c_loss;
    return outcome * params.rho / complexity;
}

double project_value(const OutcomeSet& outcomes, const ValueParams& params) {
    if (outcomes.outcomes.empty()) {
        throw std::invalid_argument("project_value: outcome list must be non-empty");
    }
    double total = 0.0;
    for (double e : outcomes.outcomes) total += outcome_value(e, params);
    return total;
}

const char* to_string(AdditivityClass cls) {
    switch (cls) {
        case AdditivityClass::SubAdditive: return "subadditive";
        case AdditivityClass::Additive: return "additive";
        case AdditivityClass::SuperAdditive: return "superadditive";
        case AdditivityClass::Mixed: return "mixed";
    }
    return "?";
}

} // namespace fecon::valuation
