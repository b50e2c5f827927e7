#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fecon/errors.hpp"
#include "fecon/valuation.hpp"

using namespace fecon::valuation;
using fecon::ValidationError;

namespace {

// Four states, two departments {0,1} / {2,3}, two functions with two events each.
OrgStructure small_org() {
    OrgStructure org;
    org.states = 4;
    org.departments = {0b0011, 0b1100};
    org.function_events = {{0b0101, 0b1010}, {0b0001, 0b1110}};
    return org;
}

} // namespace

TEST_CASE("payoff scales the outcome sum by the inverse capability") {
    CHECK(payoff({{3.0, 5.0}, OutcomeKind::Marketing}, 2.0) == doctest::Approx(4.0));
    CHECK(payoff({{0.0, 0.0, 0.0}, OutcomeKind::Marketing}, 3.7) == doctest::Approx(0.0));
    CHECK(payoff({{1.0, -4.0}, OutcomeKind::Marketing}, 0.5) == doctest::Approx(-6.0));
    CHECK_THROWS_AS(payoff({{1.0}, OutcomeKind::Marketing}, 0.0), std::domain_error);
    CHECK_THROWS_AS(payoff({{}, OutcomeKind::Marketing}, 1.0), std::invalid_argument);
}

TEST_CASE("capacity tables validate at construction") {
    CHECK_NOTHROW(Capacity::additive({0.5, 0.5}));
    // Non-monotone table: W({0}) above W({0,1}).
    CHECK_THROWS_AS(Capacity(3, {0.0, 0.9, 0.3, 0.5, 0.3, 0.95, 0.6, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(Capacity(2, {0.1, 0.5, 0.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(Capacity(2, {0.0, 0.5, 0.5, 0.9}), std::domain_error);
    CHECK_THROWS_AS(Capacity(2, {0.0, 0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("prospect value weights partition events") {
    const auto even = Capacity::additive({0.5, 0.5});
    const auto identity = [](double e) { return e; };

    SUBCASE("a single full event reduces to the bare value") {
        CHECK(prospect_value({{7.5, 0b11}}, even, identity) == doctest::Approx(7.5));
    }
    SUBCASE("zero outcomes give zero value") {
        CHECK(prospect_value({{0.0, 0b01}, {0.0, 0b10}}, even, identity) ==
              doctest::Approx(0.0));
    }
    SUBCASE("two equal-weight events average the values") {
        CHECK(prospect_value({{2.0, 0b01}, {4.0, 0b10}}, even, identity) ==
              doctest::Approx(3.0));
    }
    SUBCASE("non-partitions are rejected") {
        CHECK_THROWS_AS(prospect_value({{1.0, 0b01}}, even, identity), ValidationError);
        CHECK_THROWS_AS(prospect_value({{1.0, 0b01}, {2.0, 0b01}}, even, identity),
                        ValidationError);
    }
}

TEST_CASE("organizational cumulative capacity") {
    SUBCASE("one function, one department, one event") {
        OrgStructure org;
        org.states = 2;
        org.departments = {0b11};
        org.function_events = {{0b11}};
        CHECK(org_capacity(org, Capacity::additive({0.5, 0.5})) == doctest::Approx(1.0));
    }
    SUBCASE("additive capacities contribute one unit per function") {
        const auto org = small_org();
        const auto even = Capacity::additive({0.25, 0.25, 0.25, 0.25});
        CHECK(org_capacity(org, even) ==
              doctest::Approx(static_cast<double>(org.function_events.size())));
    }
    SUBCASE("explicit table matches the brute-force cell sum") {
        const auto org = small_org();
        const auto table = Capacity::power(4, 2.0);
        double expected = 0.0;
        for (const auto& events : org.function_events) {
            for (EventMask dept : org.departments) {
                for (EventMask event : events) expected += table(event & dept);
            }
        }
        CHECK(org_capacity(org, table) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("additivity classification") {
    const auto org = small_org();
    CHECK(additivity_check(org, Capacity::additive({0.25, 0.25, 0.25, 0.25})) ==
          AdditivityClass::Additive);
    CHECK(additivity_check(org, Capacity::power(4, 2.0)) == AdditivityClass::SuperAdditive);
    CHECK(additivity_check(org, Capacity::power(4, 0.5)) == AdditivityClass::SubAdditive);
}

TEST_CASE("profitability complexity is a ceiling ratio") {
    CHECK(profitability_complexity(7.0, 3) == 3);
    CHECK(profitability_complexity(6.0, 3) == 2);
    CHECK(profitability_complexity(0.5, 1) == 1);
    CHECK(profitability_complexity(0.0, 4) == 0);
    CHECK_THROWS_AS(profitability_complexity(1.0, 0), std::domain_error);
    CHECK_THROWS_AS(profitability_complexity(-1.0, 2), std::domain_error);
}

TEST_CASE("outcome value uses a stiffer slope for losses") {
    const ValueParams params{2.0, 3.0, 2.0};
    CHECK(outcome_value(6.0, params) == doctest::Approx(4.0));
    CHECK(outcome_value(0.0, params) == doctest::Approx(0.0));
    CHECK(outcome_value(-6.0, params) == doctest::Approx(-6.0));

    SUBCASE("positively homogeneous on each branch") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> outcome(-10.0, 10.0);
        std::uniform_real_distribution<double> scale(0.1, 5.0);
        for (int trial = 0; trial < 200; ++trial) {
            const double e = outcome(rng);
            const double k = scale(rng);
            CHECK(outcome_value(k * e, params) ==
                  doctest::Approx(k * outcome_value(e, params)).epsilon(1e-12));
        }
    }
    SUBCASE("losses never flatter than gains") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> outcome(0.01, 10.0);
        for (int trial = 0; trial < 200; ++trial) {
            const double e = outcome(rng);
            CHECK(std::abs(outcome_value(-e, params)) >= outcome_value(e, params));
        }
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(outcome_value(1.0, ValueParams{0.0, 1.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(outcome_value(1.0, ValueParams{1.0, 1.0, 2.0}), std::domain_error);
    }
}

TEST_CASE("project value sums outcome values") {
    CHECK(project_value({{0.0, 0.0}, OutcomeKind::Realized}, ValueParams{1.0, 1.0, 1.0}) ==
          doctest::Approx(0.0));
    CHECK(project_value({{3.0, 3.0}, OutcomeKind::Realized}, ValueParams{1.0, 1.0, 1.0}) ==
          doctest::Approx(6.0));
    CHECK(project_value({{4.0, -2.0}, OutcomeKind::Realized}, ValueParams{2.0, 2.0, 1.0}) ==
          doctest::Approx(0.0));

    SUBCASE("additive over disjoint outcome lists") {
        const ValueParams params{1.5, 2.0, 1.0};
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> outcome(-5.0, 5.0);
        for (int trial = 0; trial < 100; ++trial) {
            OutcomeSet left{{outcome(rng), outcome(rng)}, OutcomeKind::Realized};
            OutcomeSet right{{outcome(rng)}, OutcomeKind::Realized};
            OutcomeSet both = left;
            both.outcomes.push_back(right.outcomes[0]);
            CHECK(project_value(both, params) ==
                  doctest::Approx(project_value(left, params) + project_value(right, params))
                      .epsilon(1e-12));
        }
    }
}
