#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fecon/bid_engine.hpp"
#include "fecon/errors.hpp"

using namespace fecon::bid;
using fecon::ErrorKind;
using fecon::ValidationError;

namespace {

// Random convex combination of `perms` random permutations of order n.
BistochasticMatrix random_bistochastic(std::mt19937& rng, int n, int perms) {
    std::vector<std::vector<double>> entries(static_cast<size_t>(n),
                                             std::vector<double>(static_cast<size_t>(n), 0.0));
    std::vector<double> weights(static_cast<size_t>(perms));
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    double total = 0.0;
    for (double& w : weights) {
        w = unit(rng);
        total += w;
    }
    std::vector<int> image(static_cast<size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    for (int p = 0; p < perms; ++p) {
        std::shuffle(image.begin(), image.end(), rng);
        for (int i = 0; i < n; ++i) {
            entries[static_cast<size_t>(i)][static_cast<size_t>(image[static_cast<size_t>(i)])] +=
                weights[static_cast<size_t>(p)] / total;
        }
    }
    return BistochasticMatrix::validated(std::move(entries));
}

double max_reconstruction_error(const BistochasticMatrix& m, const BirkhoffDecomposition& d) {
    double worst = 0.0;
    for (int i = 0; i < m.order(); ++i) {
        for (int j = 0; j < m.order(); ++j) {
            worst = std::max(worst, std::abs(m.at(i, j) - d.reconstruct(i, j)));
        }
    }
    return worst;
}

// The activation matrix with cycles (0 1 3 2 5)(4 6).
PermutationMatrix seven_cycle_example() {
    return PermutationMatrix({1, 3, 5, 2, 6, 0, 4});
}

} // namespace

TEST_CASE("bistochastic validation") {
    CHECK_NOTHROW(BistochasticMatrix::validated({{1.0, 0.0}, {0.0, 1.0}}));
    CHECK_NOTHROW(BistochasticMatrix::validated({{0.5, 0.5}, {0.5, 0.5}}));

    SUBCASE("row sum violation reports the first bad row") {
        try {
            BistochasticMatrix::validated({{0.9, 0.2}, {0.1, 0.8}});
            FAIL("expected a row sum violation");
        } catch (const ValidationError& error) {
            CHECK(error.kind() == ErrorKind::RowSumViolation);
            CHECK(error.index() == 0);
        }
    }
    SUBCASE("column sums are checked after rows") {
        try {
            BistochasticMatrix::validated({{0.9, 0.1}, {0.9, 0.1}});
            FAIL("expected a column sum violation");
        } catch (const ValidationError& error) {
            CHECK(error.kind() == ErrorKind::ColSumViolation);
            CHECK(error.index() == 0);
        }
    }
    SUBCASE("negative entries are rejected") {
        try {
            BistochasticMatrix::validated({{1.1, -0.1}, {-0.1, 1.1}});
            FAIL("expected a negative entry");
        } catch (const ValidationError& error) {
            CHECK(error.kind() == ErrorKind::NegativeEntry);
        }
    }
    CHECK_THROWS_AS(BistochasticMatrix::validated({{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("birkhoff decomposition") {
    SUBCASE("the identity is its own single term") {
        const auto decomp =
            birkhoff_decompose(BistochasticMatrix::validated({{1.0, 0.0}, {0.0, 1.0}}));
        REQUIRE(decomp.terms.size() == 1);
        CHECK(decomp.terms[0].weight == doctest::Approx(1.0));
        CHECK(decomp.terms[0].perm == PermutationMatrix::identity(2));
    }
    SUBCASE("the uniform 2x2 splits evenly into identity and swap") {
        const auto decomp =
            birkhoff_decompose(BistochasticMatrix::validated({{0.5, 0.5}, {0.5, 0.5}}));
        REQUIRE(decomp.terms.size() == 2);
        CHECK(decomp.terms[0].weight == doctest::Approx(0.5));
        CHECK(decomp.terms[1].weight == doctest::Approx(0.5));
        const bool has_identity = decomp.terms[0].perm == PermutationMatrix::identity(2) ||
                                  decomp.terms[1].perm == PermutationMatrix::identity(2);
        const bool has_swap = decomp.terms[0].perm == PermutationMatrix({1, 0}) ||
                              decomp.terms[1].perm == PermutationMatrix({1, 0});
        CHECK(has_identity);
        CHECK(has_swap);
    }
    SUBCASE("random convex combinations reconstruct within tolerance") {
        std::mt19937 rng(23);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 7); // up to 8
            const int perms = 1 + static_cast<int>(rng() % (n + 2));
            const auto matrix = random_bistochastic(rng, n, perms);
            const auto decomp = birkhoff_decompose(matrix);
            CHECK(max_reconstruction_error(matrix, decomp) <= 1e-9);
            CHECK(std::abs(decomp.weight_sum() - 1.0) <= 1e-9);
            CHECK(static_cast<int>(decomp.terms.size()) <= n * n - 2 * n + 2);
            for (const auto& term : decomp.terms) CHECK(term.weight > 0.0);
        }
    }
    SUBCASE("deterministic for a fixed input") {
        std::mt19937 rng(29);
        const auto matrix = random_bistochastic(rng, 6, 5);
        const auto first = birkhoff_decompose(matrix);
        const auto second = birkhoff_decompose(matrix);
        REQUIRE(first.terms.size() == second.terms.size());
        for (size_t k = 0; k < first.terms.size(); ++k) {
            CHECK(first.terms[k].weight == second.terms[k].weight);
            CHECK(first.terms[k].perm == second.terms[k].perm);
        }
    }
}

TEST_CASE("cycle decomposition") {
    SUBCASE("identity splits into fixed points") {
        const auto cycles = cycles_of(PermutationMatrix::identity(3));
        REQUIRE(cycles.size() == 3);
        for (size_t k = 0; k < cycles.size(); ++k) {
            CHECK(cycles[k] == std::vector<int>{static_cast<int>(k)});
        }
    }
    SUBCASE("the seven-function example yields its two activation cycles") {
        const auto cycles = cycles_of(seven_cycle_example());
        REQUIRE(cycles.size() == 2);
        CHECK(cycles[0] == std::vector<int>{0, 1, 3, 2, 5});
        CHECK(cycles[1] == std::vector<int>{4, 6});
    }
    SUBCASE("a swap is one 2-cycle") {
        const auto cycles = cycles_of(PermutationMatrix({1, 0}));
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0] == std::vector<int>{0, 1});
    }
}

TEST_CASE("rough order of magnitude bounds") {
    const auto E = DiagOperator::cost({1.0, 2.0, 3.0});
    const auto I = DiagOperator::info({4.0, 5.0, 6.0});

    SUBCASE("worked interval") {
        const auto uniform = BistochasticMatrix::validated(
            {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3},
             {1.0 / 3, 1.0 / 3, 1.0 / 3}});
        const auto bounds = rom_bounds(E, I, 4.0, 6.0, &uniform);
        CHECK(bounds.first == doctest::Approx(24.0));
        CHECK(bounds.second == doctest::Approx(90.0));
        CHECK(bounds.first <= bounds.second);
    }
    SUBCASE("boundary case degenerates to equal products") {
        const auto bounds = rom_bounds(E, I, I.trace(), E.trace());
        CHECK(bounds.first == doctest::Approx(I.trace() * E.trace()));
        CHECK(bounds.second == doctest::Approx(E.trace() * I.trace()));
    }
    SUBCASE("inadmissible knowledge level is rejected") {
        CHECK_THROWS_AS(rom_bounds(E, I, I.trace() + 0.1, 100.0), ValidationError);
        CHECK_THROWS_AS(rom_bounds(E, I, 1.0, E.trace() - 0.1), ValidationError);
    }
    SUBCASE("bid-stage operators must be positive") {
        CHECK_THROWS_AS(DiagOperator::cost({1.0, -2.0}), std::domain_error);
        CHECK_THROWS_AS(DiagOperator::info({0.0}), std::domain_error);
    }
}

TEST_CASE("architect budgets and rearrangement bounds") {
    const auto E = DiagOperator::cost({1.0, 2.0, 3.0});
    const auto I = DiagOperator::info({4.0, 5.0, 6.0});

    CHECK(architect_budget(E, I, PermutationMatrix::identity(3)) == doctest::Approx(32.0));
    CHECK(architect_budget(E, I, PermutationMatrix({2, 1, 0})) == doctest::Approx(28.0));

    const auto flat = DiagOperator::cost({1.0, 1.0, 1.0});
    CHECK(architect_budget(flat, I, PermutationMatrix({1, 2, 0})) == doctest::Approx(15.0));

    SUBCASE("bounds bracket every permutation, attained at the sorted extremes") {
        const auto bounds = budget_bounds(E, I);
        CHECK(bounds.first == doctest::Approx(28.0));
        CHECK(bounds.second == doctest::Approx(32.0));

        std::vector<int> image{0, 1, 2};
        do {
            const double budget = architect_budget(E, I, PermutationMatrix(image));
            CHECK(budget >= bounds.first - 1e-12);
            CHECK(budget <= bounds.second + 1e-12);
        } while (std::next_permutation(image.begin(), image.end()));
    }
    SUBCASE("constant costs collapse the interval") {
        const auto bounds = budget_bounds(flat, I);
        CHECK(bounds.first == doctest::Approx(15.0));
        CHECK(bounds.second == doctest::Approx(15.0));
    }
    SUBCASE("order one") {
        const auto bounds =
            budget_bounds(DiagOperator::cost({3.0}), DiagOperator::info({7.0}));
        CHECK(bounds.first == doctest::Approx(21.0));
        CHECK(bounds.second == doctest::Approx(21.0));
    }
    SUBCASE("budgets stay inside the singular-case interval") {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> value(0.5, 4.0);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> e_values, i_values;
            const int n = 2 + static_cast<int>(rng() % 5);
            for (int k = 0; k < n; ++k) {
                e_values.push_back(value(rng));
                i_values.push_back(value(rng));
            }
            const auto e_op = DiagOperator::cost(e_values);
            const auto i_op = DiagOperator::info(i_values);
            const double i_theta = *std::min_element(i_values.begin(), i_values.end());
            const double e_p = *std::max_element(e_values.begin(), e_values.end()) *
                               static_cast<double>(n);
            const auto rom = rom_bounds(e_op, i_op, i_theta, e_p);

            std::vector<int> image(static_cast<size_t>(n));
            std::iota(image.begin(), image.end(), 0);
            std::shuffle(image.begin(), image.end(), rng);
            const double budget = architect_budget(e_op, i_op, PermutationMatrix(image));
            CHECK(budget >= rom.first - 1e-12);
            CHECK(budget <= rom.second + 1e-12);
        }
    }
}

TEST_CASE("selection report") {
    SUBCASE("a single term saturates every threshold and reads attractive") {
        BirkhoffDecomposition decomp;
        decomp.terms.push_back({1.0, PermutationMatrix::identity(3)});
        const auto report = selection_report(decomp, DiagOperator::cost({1.0, 2.0, 3.0}),
                                             DiagOperator::info({4.0, 5.0, 6.0}));
        CHECK(report.w_plus == doctest::Approx(1.0));
        CHECK(report.w_minus == doctest::Approx(1.0));
        CHECK(report.w_mean == doctest::Approx(1.0));
        CHECK(report.classes[0] == BidClass::Attractive);
        CHECK_FALSE(report.pathology);
    }
    SUBCASE("identical bounds make both thresholds the term average") {
        const auto report = selection_report({0.6, 0.3, 0.1}, {10.0, 10.0, 10.0},
                                             {8.0, 8.0, 8.0}, {12.0, 12.0, 12.0});
        CHECK(report.w_plus == doctest::Approx(1.0 / 3));
        CHECK(report.w_minus == doctest::Approx(1.0 / 3));
        CHECK(report.classes[0] == BidClass::Excellent);
        CHECK(report.classes[1] == BidClass::Unsatisfactory);
        CHECK(report.classes[2] == BidClass::Unsatisfactory);
    }
    SUBCASE("worked weighted mean") {
        const auto report = selection_report({0.5, 0.3, 0.2}, {10.0, 20.0, 30.0},
                                             {10.0, 20.0, 30.0}, {10.0, 20.0, 30.0});
        CHECK(report.w_mean == doctest::Approx(17.0 / 60.0).epsilon(1e-12));
    }
    SUBCASE("inverted thresholds raise the pathology flag") {
        const auto report = selection_report({0.9, 0.1}, {0.7, 50.0}, {0.5, 0.4},
                                             {1.0, 100.0});
        CHECK(report.w_plus < report.w_minus);
        CHECK(report.pathology);
    }
    SUBCASE("budgets outside their bounds are rejected") {
        CHECK_THROWS_AS(selection_report({1.0}, {5.0}, {6.0}, {7.0}), ValidationError);
    }
}

TEST_CASE("superposition of selected permutations") {
    const PermutationMatrix identity2 = PermutationMatrix::identity(2);
    const PermutationMatrix swap2({1, 0});

    SUBCASE("a single permutation is its own support") {
        const auto support = superpose({swap2});
        CHECK(support == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    }
    SUBCASE("identity plus swap fills the matrix") {
        const auto support = superpose({identity2, swap2});
        CHECK(support == std::vector<std::vector<int>>{{1, 1}, {1, 1}});
    }
    SUBCASE("disjoint supports contribute all their ones") {
        const PermutationMatrix first({1, 0, 3, 2});
        const PermutationMatrix second({2, 3, 0, 1});
        const auto support = superpose({first, second});
        int ones = 0;
        for (const auto& row : support) {
            for (int cell : row) ones += cell;
        }
        CHECK(ones == 8);
    }
    SUBCASE("idempotent and order independent") {
        const auto left = superpose({identity2, swap2, identity2});
        const auto right = superpose({swap2, identity2});
        CHECK(left == right);
    }
    CHECK_THROWS_AS(superpose({}), ValidationError);
}
