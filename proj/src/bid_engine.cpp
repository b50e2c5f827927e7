#include "fecon/bid_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fecon/errors.hpp"

namespace fecon::bid {

namespace {

std::string index_pair(int i, int j) {
    return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

BirkhoffDecomposition decompose_residual(std::vector<double> residual, int n,
                                         double support_tol);

} // namespace

BistochasticMatrix BistochasticMatrix::validated(std::vector<std::vector<double>> entries,
                                                 double tol) {
    const int n = static_cast<int>(entries.size());
    if (n == 0) throw std::invalid_argument("bistochastic: matrix is empty");
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(entries[i].size()) != n) {
            throw std::invalid_argument("bistochastic: matrix is not square");
        }
        for (int j = 0; j < n; ++j) {
            const double v = entries[i][j];
            if (v < 0.0) {
                throw ValidationError(ErrorKind::NegativeEntry,
                                      "bistochastic: negative entry at " + index_pair(i, j), i);
            }
            flat.push_back(v);
        }
    }
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += flat[static_cast<size_t>(i) * n + j];
        if (std::abs(sum - 1.0) > tol) {
            throw ValidationError(ErrorKind::RowSumViolation,
                                  "bistochastic: row " + std::to_string(i) + " sums to " +
                                      std::to_string(sum),
                                  i);
        }
    }
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += flat[static_cast<size_t>(i) * n + j];
        if (std::abs(sum - 1.0) > tol) {
            throw ValidationError(ErrorKind::ColSumViolation,
                                  "bistochastic: column " + std::to_string(j) + " sums to " +
                                      std::to_string(sum),
                                  j);
        }
    }
    return BistochasticMatrix(n, std::move(flat));
}

PermutationMatrix::PermutationMatrix(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    if (n == 0) throw std::invalid_argument("permutation: empty mapping");
    std::vector<char> hit(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const int j = image_[static_cast<size_t>(i)];
        if (j < 0 || j >= n || hit[static_cast<size_t>(j)]) {
            throw std::invalid_argument("permutation: mapping is not a bijection");
        }
        hit[static_cast<size_t>(j)] = 1;
    }
}

PermutationMatrix PermutationMatrix::identity(int n) {
    std::vector<int> image(static_cast<size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    return PermutationMatrix(std::move(image));
}

int PermutationMatrix::preimage(int j) const {
    for (int i = 0; i < order(); ++i) {
        if (image(i) == j) return i;
    }
    throw std::out_of_range("permutation: column out of range");
}

double BirkhoffDecomposition::reconstruct(int i, int j) const {
    double sum = 0.0;
    for (const auto& term : terms) {
        if (term.perm.image(i) == j) sum += term.weight;
    }
    return sum;
}

double BirkhoffDecomposition::weight_sum() const {
    double sum = 0.0;
    for (const auto& term : terms) sum += term.weight;
    return sum;
}

DiagOperator DiagOperator::cost(std::vector<double> values) {
    DiagOperator op{OperatorKind::Cost, std::move(values)};
    for (double v : op.values) {
        if (!(v > 0.0)) {
            throw std::domain_error("costing operator: bid-stage eigenvalues must be > 0");
        }
    }
    return op;
}

DiagOperator DiagOperator::info(std::vector<double> values) {
    DiagOperator op{OperatorKind::Information, std::move(values)};
    for (double v : op.values) {
        if (!(v > 0.0)) {
            throw std::domain_error("information operator: bid-stage eigenvalues must be > 0");
        }
    }
    return op;
}

double DiagOperator::trace() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
}

std::vector<std::vector<int>> cycles_of(const PermutationMatrix& p) {
    const int n = p.order();
    std::vector<char> visited(static_cast<size_t>(n), 0);
    std::vector<std::vector<int>> cycles;
    for (int start = 0; start < n; ++start) {
        if (visited[static_cast<size_t>(start)]) continue;
        std::vector<int> cycle;
        int at = start;
        do {
            visited[static_cast<size_t>(at)] = 1;
            cycle.push_back(at);
            at = p.image(at);
        } while (at != start);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

namespace {

BirkhoffDecomposition decompose_residual(std::vector<double> residual, int n,
                                         double support_tol) {
    const int max_terms = n * n - 2 * n + 2;
    std::vector<BirkhoffTerm> terms;

    std::vector<int> row_of_col(static_cast<size_t>(n));
    std::vector<int> col_of_row(static_cast<size_t>(n));
    std::vector<char> seen(static_cast<size_t>(n));

    // Deterministic Kuhn matching: rows in increasing order, columns tried
    // smallest first.
    std::function<bool(int)> try_row = [&](int r) -> bool {
        for (int c = 0; c < n; ++c) {
            if (residual[static_cast<size_t>(r) * n + c] <= 0.0 || seen[static_cast<size_t>(c)]) {
                continue;
            }
            seen[static_cast<size_t>(c)] = 1;
            if (row_of_col[static_cast<size_t>(c)] < 0 ||
                try_row(row_of_col[static_cast<size_t>(c)])) {
                row_of_col[static_cast<size_t>(c)] = r;
                col_of_row[static_cast<size_t>(r)] = c;
                return true;
            }
        }
        return false;
    };

    while (true) {
        bool any_support = false;
        for (double& v : residual) {
            if (v < support_tol) {
                v = 0.0;
            } else {
                any_support = true;
            }
        }
        if (!any_support) break;

        std::fill(row_of_col.begin(), row_of_col.end(), -1);
        std::fill(col_of_row.begin(), col_of_row.end(), -1);
        for (int r = 0; r < n; ++r) {
            std::fill(seen.begin(), seen.end(), 0);
            if (!try_row(r)) {
                throw ValidationError(ErrorKind::MatchingFailure,
                                      "birkhoff: support admits no perfect matching from row " +
                                          std::to_string(r),
                                      r);
            }
        }

        double theta = residual[static_cast<size_t>(0) * n + col_of_row[0]];
        for (int r = 1; r < n; ++r) {
            theta = std::min(theta, residual[static_cast<size_t>(r) * n + col_of_row[r]]);
        }
        for (int r = 0; r < n; ++r) {
            residual[static_cast<size_t>(r) * n + col_of_row[r]] -= theta;
        }
        terms.push_back(BirkhoffTerm{theta, PermutationMatrix(col_of_row)});
        if (static_cast<int>(terms.size()) > max_terms) {
            throw ValidationError(ErrorKind::MatchingFailure,
                                  "birkhoff: term bound exceeded, input too degenerate");
        }
    }

    if (terms.empty()) {
        throw ValidationError(ErrorKind::MatchingFailure, "birkhoff: no support to decompose");
    }
    double total = 0.0;
    for (const auto& term : terms) total += term.weight;
    for (auto& term : terms) term.weight /= total;
    return BirkhoffDecomposition{std::move(terms)};
}

} // namespace

BirkhoffDecomposition birkhoff_decompose(const BistochasticMatrix& m, double support_tol) {
    return decompose_residual(m.raw(), m.order(), support_tol);
}

std::pair<double, double> rom_bounds(const DiagOperator& E, const DiagOperator& I,
                                     double I_theta, double E_p, const BistochasticMatrix* mf) {
    if (E.size() != I.size()) {
        throw std::invalid_argument("rom_bounds: operator sizes differ");
    }
    const double trace_e = E.trace();
    const double trace_i = I.trace();
    if (I_theta > trace_i) {
        throw ValidationError(ErrorKind::AdmissibilityViolation,
                              "rom_bounds: I_theta exceeds Tr(I)");
    }
    if (trace_e > E_p) {
        throw ValidationError(ErrorKind::AdmissibilityViolation,
                              "rom_bounds: Tr(E) exceeds E_p");
    }
    if (mf != nullptr) {
        if (mf->order() != E.size()) {
            throw std::invalid_argument("rom_bounds: matrix order mismatch");
        }
        const int n = mf->order();
        for (int i = 0; i < n; ++i) {
            double info_mix = 0.0;
            for (int j = 0; j < n; ++j) info_mix += mf->at(i, j) * I.values[static_cast<size_t>(j)];
            if (info_mix < I_theta - 1e-12) {
                throw ValidationError(ErrorKind::AdmissibilityViolation,
                                      "rom_bounds: row " + std::to_string(i) +
                                          " mixes less information than I_theta",
                                      i);
            }
        }
        for (int j = 0; j < n; ++j) {
            double cost_mix = 0.0;
            for (int i = 0; i < n; ++i) cost_mix += E.values[static_cast<size_t>(i)] * mf->at(i, j);
            if (cost_mix > E_p + 1e-12) {
                throw ValidationError(ErrorKind::AdmissibilityViolation,
                                      "rom_bounds: column " + std::to_string(j) +
                                          " concentrates more cost than E_p",
                                      j);
            }
        }
    }
    return {I_theta * trace_e, E_p * trace_i};
}

double architect_budget(const DiagOperator& E, const DiagOperator& I,
                        const PermutationMatrix& p) {
    if (E.size() != I.size() || E.size() != p.order()) {
        throw std::invalid_argument("architect_budget: dimension mismatch");
    }
    double budget = 0.0;
    for (int i = 0; i < p.order(); ++i) {
        budget += E.values[static_cast<size_t>(i)] * I.values[static_cast<size_t>(p.image(i))];
    }
    return budget;
}

std::pair<double, double> budget_bounds(const DiagOperator& E, const DiagOperator& I) {
    if (E.size() != I.size()) {
        throw std::invalid_argument("budget_bounds: operator sizes differ");
    }
    std::vector<double> e_sorted = E.values;
    std::vector<double> i_sorted = I.values;
    std::sort(e_sorted.begin(), e_sorted.end());
    std::sort(i_sorted.begin(), i_sorted.end());
    double upper = 0.0;
    double lower = 0.0;
    const size_t n = e_sorted.size();
    for (size_t k = 0; k < n; ++k) {
        upper += e_sorted[k] * i_sorted[k];
        lower += e_sorted[k] * i_sorted[n - 1 - k];
    }
    return {lower, upper};
}

SelectionReport selection_report(std::vector<double> weights, std::vector<double> budgets,
                                 std::vector<double> lower, std::vector<double> upper) {
    const size_t n = weights.size();
    if (n == 0 || budgets.size() != n || lower.size() != n || upper.size() != n) {
        throw std::invalid_argument("selection_report: input sizes differ");
    }
    double sum_b = 0.0, sum_lo = 0.0, sum_hi = 0.0;
    double acc_b = 0.0, acc_lo = 0.0, acc_hi = 0.0;
    for (size_t k = 0; k < n; ++k) {
        if (lower[k] > budgets[k] + 1e-9 || budgets[k] > upper[k] + 1e-9) {
            throw ValidationError(ErrorKind::AdmissibilityViolation,
                                  "selection_report: budget outside its bounds at term " +
                                      std::to_string(k),
                                  static_cast<int>(k));
        }
        sum_b += budgets[k];
        sum_lo += lower[k];
        sum_hi += upper[k];
        acc_b += budgets[k] * weights[k];
        acc_lo += lower[k] * weights[k];
        acc_hi += upper[k] * weights[k];
    }
    if (!(sum_b > 0.0) || !(sum_lo > 0.0) || !(sum_hi > 0.0)) {
        throw std::domain_error("selection_report: budget sums must be > 0");
    }

    SelectionReport report;
    report.weights = std::move(weights);
    report.budgets = std::move(budgets);
    report.bounds.reserve(n);
    for (size_t k = 0; k < n; ++k) report.bounds.emplace_back(lower[k], upper[k]);
    report.w_plus = acc_hi / sum_hi;
    report.w_minus = acc_lo / sum_lo;
    report.w_mean = acc_b / sum_b;
    report.pathology = report.w_plus < report.w_minus;
    report.classes.reserve(n);
    for (double w : report.weights) {
        if (w > report.w_plus) {
            report.classes.push_back(BidClass::Excellent);
        } else if (w < report.w_minus) {
            report.classes.push_back(BidClass::Unsatisfactory);
        } else {
            report.classes.push_back(BidClass::Attractive);
        }
    }
    return report;
}

SelectionReport selection_report(const BirkhoffDecomposition& decomp, const DiagOperator& E,
                                 const DiagOperator& I) {
    const auto [lower, upper] = budget_bounds(E, I);
    std::vector<double> weights, budgets, lo, hi;
    weights.reserve(decomp.terms.size());
    for (const auto& term : decomp.terms) {
        weights.push_back(term.weight);
        budgets.push_back(architect_budget(E, I, term.perm));
        lo.push_back(lower);
        hi.push_back(upper);
    }
    return selection_report(std::move(weights), std::move(budgets), std::move(lo),
                            std::move(hi));
}

std::vector<std::vector<int>> superpose(const std::vector<PermutationMatrix>& selected) {
    if (selected.empty()) {
        throw ValidationError(ErrorKind::EmptySelection, "superpose: no permutations selected");
    }
    const int n = selected.front().order();
    for (const auto& p : selected) {
        if (p.order() != n) throw std::invalid_argument("superpose: mixed orders");
    }
    std::vector<std::vector<int>> result(static_cast<size_t>(n),
                                         std::vector<int>(static_cast<size_t>(n), 0));
    for (const auto& p : selected) {
        for (int i = 0; i < n; ++i) result[static_cast<size_t>(i)][static_cast<size_t>(p.image(i))] = 1;
    }
    return result;
}

const char* to_string(BidClass cls) {
    switch (cls) {
        case BidClass::Excellent: return "excellent";
        case BidClass::Attractive: return "attractive";
        case BidClass::Unsatisfactory: return "unsatisfactory";
    }
    return "?";
}

} // namespace fecon::bid
