#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fecon/exchange.hpp"

using namespace fecon::exchange;

namespace {

constexpr double kE = 2.718281828459045235;

ExchangeSpec random_spec(std::mt19937& rng) {
    std::uniform_real_distribution<double> rho(0.2, 5.0);
    std::uniform_real_distribution<double> m(0.0, 6.0);
    std::uniform_real_distribution<double> c(0.3, 4.0);
    std::uniform_real_distribution<double> k(-3.0, 3.0);
    ExchangeSpec spec{FrameReference::supply(rho(rng), m(rng), c(rng), k(rng)),
                      FrameReference::demand(rho(rng), m(rng), c(rng), k(rng)),
                      rho(rng), c(rng), 1.0};
    return spec;
}

} // namespace

TEST_CASE("supply price follows the anchored exponential") {
    const auto ref = FrameReference::supply(10.0, 5.0, 5.0);
    CHECK(supply_price(ref, 5.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(supply_price(ref, 10.0) == doctest::Approx(10.0 * kE).epsilon(1e-14));

    const auto unit = FrameReference::supply(1.0, 0.0, 1.0);
    CHECK(supply_price(unit, -1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-14));
}

TEST_CASE("demand price mirrors the supply curve") {
    const auto ref = FrameReference::demand(10.0, 5.0, 5.0);
    CHECK(demand_price(ref, 5.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(demand_price(ref, 0.0) == doctest::Approx(10.0 * kE).epsilon(1e-14));

    const auto small = FrameReference::demand(2.0, 0.0, 1.0);
    CHECK(demand_price(small, 1.0) == doctest::Approx(0.73575888234288464).epsilon(1e-14));
}

TEST_CASE("price curves are monotone and invertible") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> m_dist(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_spec(rng);
        const double m1 = m_dist(rng);
        const double m2 = m1 + 0.25;
        CHECK(supply_price(spec.supply, m1) < supply_price(spec.supply, m2));
        CHECK(demand_price(spec.demand, m1) > demand_price(spec.demand, m2));

        // Inverting the exponential recovers the function count.
        const double price = supply_price(spec.supply, m1);
        const double recovered =
            spec.supply.m_O + spec.supply.c_O * std::log(price / spec.supply.rho_O);
        CHECK(recovered == doctest::Approx(m1).epsilon(1e-9));
    }
}

TEST_CASE("price overflow reports a range error") {
    const auto ref = FrameReference::supply(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(supply_price(ref, 1.0e6), std::range_error);
    CHECK_THROWS_AS(demand_price(FrameReference::demand(1.0, 0.0, 1.0), -1.0e6),
                    std::range_error);
}

TEST_CASE("supply capital") {
    SUBCASE("at the reference price only the legacy terms remain") {
        const auto ref = FrameReference::supply(2.0, 3.0, 4.0, 7.0);
        const double c_s = 1.5;
        CHECK(supply_capital(ref, 2.0, c_s) ==
              doctest::Approx(2.0 * 3.0 * (c_s / 4.0) + 7.0).epsilon(1e-12));
    }
    SUBCASE("worked value") {
        const auto ref = FrameReference::supply(1.0, 3.0, 3.0, 0.0);
        CHECK(supply_capital(ref, kE, 2.0) ==
              doctest::Approx(10.873127313836181).epsilon(1e-14));
    }
    SUBCASE("all terms vanish") {
        const auto ref = FrameReference::supply(1.0, 0.0, 1.0, 5.0);
        CHECK(supply_capital(ref, 1.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
    }
    SUBCASE("nonpositive price is a domain error") {
        const auto ref = FrameReference::supply(1.0, 0.0, 1.0);
        CHECK_THROWS_AS(supply_capital(ref, 0.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(supply_capital(ref, -1.0, 1.0), std::domain_error);
    }
}

TEST_CASE("demand capital") {
    SUBCASE("at the reference price only the legacy terms remain") {
        const auto ref = FrameReference::demand(2.0, 3.0, 4.0, 7.0);
        CHECK(demand_capital(ref, 2.0, 1.5) ==
              doctest::Approx(2.0 * 3.0 * (1.5 / 4.0) + 7.0).epsilon(1e-12));
    }
    SUBCASE("worked value") {
        const auto ref = FrameReference::demand(1.0, 3.0, 3.0, 0.0);
        CHECK(demand_capital(ref, 1.0 / kE, 2.0) ==
              doctest::Approx(1.4715177646857693).epsilon(1e-14));
    }
    SUBCASE("all terms vanish") {
        const auto ref = FrameReference::demand(1.0, 0.0, 1.0, 0.0);
        CHECK(demand_capital(ref, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("global capital") {
    SUBCASE("identical frames with zero function counts keep only legacy capital") {
        ExchangeSpec spec{FrameReference::supply(2.0, 0.0, 1.0, 3.0),
                          FrameReference::demand(2.0, 0.0, 1.0, 4.0), 2.0, 1.0, 1.0};
        CHECK(global_capital(spec) == doctest::Approx(7.0).epsilon(1e-12));
    }
    SUBCASE("worked value") {
        ExchangeSpec spec{FrameReference::supply(1.0 / kE, 1.0, 1.0, 0.0),
                          FrameReference::demand(kE, 1.0, 1.0, 0.0), 1.0, 1.0, 1.0};
        CHECK(global_capital(spec) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("equals the sum of the side capitals at the agreed price") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 1000; ++trial) {
            const auto spec = random_spec(rng);
            const double split = supply_capital(spec.supply, spec.rho_star, spec.c) +
                                 demand_capital(spec.demand, spec.rho_star, spec.c);
            const double joint = global_capital(spec);
            CHECK(std::abs(joint - split) <= 1e-9 * std::max(1.0, std::abs(split)));
        }
    }
}

TEST_CASE("growth report") {
    SUBCASE("saturated frames need r above exp(-2)") {
        ExchangeSpec spec{FrameReference::supply(1.0, 2.0, 2.0),
                          FrameReference::demand(1.0, 3.0, 3.0), 1.0, 1.0, 1.0};
        const auto report = growth_report(spec);
        CHECK(report.threshold == doctest::Approx(0.1353352832366127).epsilon(1e-14));
        CHECK(report.r == 1.0);
        CHECK(report.grows);
        CHECK(report.regime == GrowthRegime::Virtuous);
    }
    SUBCASE("unit maturities reproduce the plain growth expression exactly") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 200; ++trial) {
            const auto spec = random_spec(rng);
            const auto report = growth_report(spec);
            const double legacy = spec.supply.m_O / spec.supply.c_O +
                                  spec.demand.m_O / spec.demand.c_O;
            const double plain =
                spec.c * spec.rho_star *
                (std::log(spec.demand.rho_O / spec.supply.rho_O) + legacy);
            CHECK(report.delta_K == plain);
        }
    }
    SUBCASE("worked maturity-weighted value") {
        ExchangeSpec spec{FrameReference::supply(1.0, 2.0, 2.0),
                          FrameReference::demand(1.0, 3.0, 3.0), 1.0, 2.0, 0.5};
        const auto report = growth_report(spec);
        CHECK(report.delta_K == doctest::Approx(8.0).epsilon(1e-12));
    }
    SUBCASE("growth sign matches the threshold comparison when c/M > 0") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> wobble(-0.5, 0.5);
        for (int trial = 0; trial < 500; ++trial) {
            auto spec = random_spec(rng);
            const double threshold = growth_threshold(spec.supply, spec.demand);
            // Place r on both sides of the threshold.
            const double target = threshold * std::exp(wobble(rng));
            spec.demand.rho_O = target * spec.supply.rho_O;
            const auto report = growth_report(spec);
            CHECK(report.grows == (report.r > report.threshold));
        }
    }
    SUBCASE("regimes follow the maturity signs") {
        ExchangeSpec virtuous{FrameReference::supply(1.0, 1.0, 1.0, 0.0, 1.0),
                              FrameReference::demand(1.0, 1.0, 1.0, 0.0, 2.0), 1.0, 1.0, 0.5};
        CHECK(growth_report(virtuous).regime == GrowthRegime::Virtuous);

        ExchangeSpec erroneous{FrameReference::supply(1.0, 1.0, 1.0, 0.0, -1.0),
                               FrameReference::demand(1.0, 1.0, 1.0, 0.0, -2.0), 1.0, 1.0,
                               -0.5};
        CHECK(growth_report(erroneous).regime == GrowthRegime::Erroneous);

        ExchangeSpec mixed{FrameReference::supply(1.0, 1.0, 1.0, 0.0, 1.0),
                           FrameReference::demand(1.0, 1.0, 1.0, 0.0, -2.0), 1.0, 1.0, 0.5};
        CHECK(growth_report(mixed).regime == GrowthRegime::Mixed);
    }
    SUBCASE("zero maturity is a domain error") {
        ExchangeSpec spec{FrameReference::supply(1.0, 1.0, 1.0),
                          FrameReference::demand(1.0, 1.0, 1.0), 1.0, 1.0, 0.0};
        CHECK_THROWS_AS(growth_report(spec), std::domain_error);
    }
}

TEST_CASE("inflation diagnostic") {
    const ExchangeSpec base{FrameReference::supply(1.0, 2.0, 2.0),
                            FrameReference::demand(1.0, 3.0, 3.0), 1.0, 1.0, 1.0};

    SUBCASE("rising demand complexity raises the threshold") {
        ExchangeSpec after = base;
        after.demand.c_O *= 2.0;
        CHECK(inflation_diagnostic(base, after) == PriceTrend::InflationaryPressure);
    }
    SUBCASE("identical setups are neutral") {
        CHECK(inflation_diagnostic(base, base) == PriceTrend::Neutral);
    }
    SUBCASE("rising demand function count lowers the threshold") {
        ExchangeSpec after = base;
        after.demand.m_O *= 2.0;
        CHECK(inflation_diagnostic(base, after) == PriceTrend::DeflationaryPressure);
    }
}

TEST_CASE("frame validation") {
    CHECK_THROWS_AS(FrameReference::supply(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(FrameReference::supply(1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(FrameReference::supply(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(FrameReference::supply(1.0, 1.0, 1.0, 0.0, 0.0), std::domain_error);

    ExchangeSpec swapped{FrameReference::demand(1.0, 1.0, 1.0),
                         FrameReference::supply(1.0, 1.0, 1.0), 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(swapped.validate(), std::domain_error);
}
