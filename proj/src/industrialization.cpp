#include "fecon/industrialization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fecon/errors.hpp"

namespace fecon::industrial {

void BlockPattern::validate() const {
    if (static_cast<int>(block_orders.size()) != base.order()) {
        throw ValidationError(ErrorKind::OrderMismatch,
                              "block pattern: one block order per base row required");
    }
    for (size_t i = 0; i < block_orders.size(); ++i) {
        if (block_orders[i] < 1) {
            throw ValidationError(ErrorKind::OrderMismatch,
                                  "block pattern: block orders must be >= 1",
                                  static_cast<int>(i));
        }
    }
}

int BlockPattern::expanded_order() const {
    int total = 0;
    for (int d : block_orders) total += d;
    return total;
}

int BlockPattern::row_offset(int i) const {
    int offset = 0;
    for (int r = 0; r < i; ++r) offset += block_orders[static_cast<size_t>(r)];
    return offset;
}

int BlockPattern::col_order(int l) const {
    return block_orders[static_cast<size_t>(base.preimage(l))];
}

int BlockPattern::col_offset(int l) const {
    int offset = 0;
    for (int k = 0; k < l; ++k) offset += col_order(k);
    return offset;
}

BistochasticMatrix BlockMatrix::assemble(double tol) const {
    const int n = pattern.expanded_order();
    std::vector<std::vector<double>> full(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < pattern.functions(); ++i) {
        const int d = pattern.block_orders[static_cast<size_t>(i)];
        const int r0 = pattern.row_offset(i);
        const int c0 = pattern.col_offset(pattern.base.image(i));
        const BistochasticMatrix& block = blocks[static_cast<size_t>(i)];
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                full[static_cast<size_t>(r0 + r)][static_cast<size_t>(c0 + c)] = block.at(r, c);
            }
        }
    }
    return BistochasticMatrix::validated(std::move(full), tol);
}

BlockMatrix block_expand(BlockPattern pattern, std::vector<BistochasticMatrix> blocks) {
    pattern.validate();
    if (static_cast<int>(blocks.size()) != pattern.functions()) {
        throw ValidationError(ErrorKind::MissingBlock,
                              "block_expand: expected one block per base row, got " +
                                  std::to_string(blocks.size()));
    }
    for (int i = 0; i < pattern.functions(); ++i) {
        if (blocks[static_cast<size_t>(i)].order() != pattern.block_orders[static_cast<size_t>(i)]) {
            throw ValidationError(ErrorKind::OrderMismatch,
                                  "block_expand: block at row " + std::to_string(i) +
                                      " has the wrong order",
                                  i);
        }
    }
    BlockMatrix result{std::move(pattern), std::move(blocks)};
    result.assemble(); // bistochasticity of the assembly
    return result;
}

PermutationMatrix block_restrict(const PermutationMatrix& term, const BlockPattern& pattern,
                                 int i) {
    const int d = pattern.block_orders[static_cast<size_t>(i)];
    const int r0 = pattern.row_offset(i);
    const int c0 = pattern.col_offset(pattern.base.image(i));
    std::vector<int> local(static_cast<size_t>(d));
    for (int r = 0; r < d; ++r) {
        const int j = term.image(r0 + r);
        if (j < c0 || j >= c0 + d) {
            throw ValidationError(ErrorKind::OrderMismatch,
                                  "block_restrict: term leaves the block pattern at row " +
                                      std::to_string(r0 + r),
                                  i);
        }
        local[static_cast<size_t>(r)] = j - c0;
    }
    return PermutationMatrix(std::move(local));
}

BirkhoffDecomposition block_birkhoff(const BlockMatrix& b) {
    BirkhoffDecomposition decomp = birkhoff_decompose(b.assemble());
    // Every term restricts to a permutation inside each declared block.
    for (const auto& term : decomp.terms) {
        for (int i = 0; i < b.pattern.functions(); ++i) {
            block_restrict(term.perm, b.pattern, i);
        }
    }
    return decomp;
}

SplitOperators uniform_split(const std::vector<double>& e_parent,
                             const std::vector<double>& i_parent, const BlockPattern& pattern) {
    pattern.validate();
    const int m = pattern.functions();
    if (static_cast<int>(e_parent.size()) != m || static_cast<int>(i_parent.size()) != m) {
        throw std::invalid_argument("uniform_split: one parent eigenvalue per function required");
    }
    SplitOperators splits;
    splits.e_split.reserve(static_cast<size_t>(m));
    splits.i_split.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int d = pattern.block_orders[static_cast<size_t>(i)];
        splits.e_split.emplace_back(static_cast<size_t>(d),
                                    e_parent[static_cast<size_t>(i)] / d);
    }
    for (int l = 0; l < m; ++l) {
        const int d = pattern.col_order(l);
        splits.i_split.emplace_back(static_cast<size_t>(d),
                                    i_parent[static_cast<size_t>(l)] / d);
    }
    return splits;
}

void check_split_conservation(const SplitOperators& splits,
                              const std::vector<double>& e_parent,
                              const std::vector<double>& i_parent, const BlockPattern& pattern,
                              double rel_tol) {
    pattern.validate();
    const int m = pattern.functions();
    if (static_cast<int>(splits.e_split.size()) != m ||
        static_cast<int>(splits.i_split.size()) != m ||
        static_cast<int>(e_parent.size()) != m || static_cast<int>(i_parent.size()) != m) {
        throw std::invalid_argument("split conservation: size mismatch");
    }
    auto check = [&](const std::vector<double>& parts, double parent, int index,
                     const char* what) {
        double sum = 0.0;
        for (double v : parts) sum += v;
        const double tol = rel_tol * std::max(1.0, std::abs(parent));
        if (std::abs(sum - parent) > tol) {
            throw ValidationError(ErrorKind::AdmissibilityViolation,
                                  std::string(what) + " split at index " +
                                      std::to_string(index) + " does not sum to its parent",
                                  index);
        }
    };
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(splits.e_split[static_cast<size_t>(i)].size()) !=
            pattern.block_orders[static_cast<size_t>(i)]) {
            throw std::invalid_argument("split conservation: E split length mismatch");
        }
        check(splits.e_split[static_cast<size_t>(i)], e_parent[static_cast<size_t>(i)], i,
              "costing");
    }
    for (int l = 0; l < m; ++l) {
        if (static_cast<int>(splits.i_split[static_cast<size_t>(l)].size()) !=
            pattern.col_order(l)) {
            throw std::invalid_argument("split conservation: I split length mismatch");
        }
        check(splits.i_split[static_cast<size_t>(l)], i_parent[static_cast<size_t>(l)], l,
              "information");
    }
}

double block_budget(const std::vector<double>& e_row, const std::vector<double>& i_row,
                    const PermutationMatrix& pi) {
    if (e_row.size() != i_row.size() ||
        static_cast<int>(e_row.size()) != pi.order()) {
        throw std::invalid_argument("block_budget: dimension mismatch");
    }
    double budget = 0.0;
    for (int k = 0; k < pi.order(); ++k) {
        budget += e_row[static_cast<size_t>(k)] * i_row[static_cast<size_t>(pi.image(k))];
    }
    return budget;
}

double block_budget(const SplitOperators& splits, int i, int l, const PermutationMatrix& pi) {
    if (i < 0 || i >= static_cast<int>(splits.e_split.size()) || l < 0 ||
        l >= static_cast<int>(splits.i_split.size())) {
        throw std::out_of_range("block_budget: block index out of range");
    }
    return block_budget(splits.e_split[static_cast<size_t>(i)],
                        splits.i_split[static_cast<size_t>(l)], pi);
}

Mask01 technical_select(const std::vector<BirkhoffTerm>& terms, const std::vector<int>& chosen) {
    if (chosen.empty()) {
        throw ValidationError(ErrorKind::EmptySelection, "technical_select: empty choice set");
    }
    if (terms.empty()) {
        throw ValidationError(ErrorKind::EmptySelection, "technical_select: no terms");
    }
    const int d = terms.front().perm.order();
    Mask01 selected(static_cast<size_t>(d), std::vector<int>(static_cast<size_t>(d), 0));
    for (int alpha : chosen) {
        if (alpha < 0 || alpha >= static_cast<int>(terms.size())) {
            throw std::out_of_range("technical_select: term index out of range");
        }
        const PermutationMatrix& pi = terms[static_cast<size_t>(alpha)].perm;
        if (pi.order() != d) throw std::invalid_argument("technical_select: mixed orders");
        for (int k = 0; k < d; ++k) {
            selected[static_cast<size_t>(k)][static_cast<size_t>(pi.image(k))] = 1;
        }
    }
    return selected;
}

ExternalityReport externality_metric(const std::vector<double>& e_row,
                                     const std::vector<double>& i_row,
                                     const Mask01& t_selected) {
    const size_t rows = e_row.size();
    const size_t cols = i_row.size();
    if (t_selected.size() != rows) {
        throw std::invalid_argument("externality_metric: row dimension mismatch");
    }
    for (const auto& row : t_selected) {
        if (row.size() != cols) {
            throw std::invalid_argument("externality_metric: column dimension mismatch");
        }
    }

    ExternalityReport report{0.0, ExternalityClass::Clean, {}};
    bool any_used = false;
    bool used_info_positive = true;
    for (size_t k = 0; k < rows; ++k) {
        for (size_t l = 0; l < cols; ++l) {
            if (t_selected[k][l] == 0) continue;
            any_used = true;
            const double product = e_row[k] * i_row[l];
            report.h += product;
            if (!(i_row[l] > 0.0)) used_info_positive = false;
            if (product < 0.0) {
                const NegativeTermNature nature = i_row[l] > 0.0
                                                      ? NegativeTermNature::Negligence
                                                      : NegativeTermNature::MaliciousThinking;
                report.negative_terms.push_back(NegativeTerm{static_cast<int>(k),
                                                             static_cast<int>(l), product,
                                                             nature});
            }
        }
    }

    const bool all_cost_negative =
        !e_row.empty() && std::all_of(e_row.begin(), e_row.end(),
                                      [](double v) { return v < 0.0; });
    if (any_used && all_cost_negative && used_info_positive) {
        report.classification = ExternalityClass::ExplicitExternality;
    } else if (report.h < 0.0) {
        report.classification = ExternalityClass::MajorDefault;
    } else if (!report.negative_terms.empty() && report.h > 0.0) {
        report.classification = ExternalityClass::MinorDefault;
    } else {
        report.classification = ExternalityClass::Clean;
    }
    return report;
}

AdvantageChoice comparative_advantage(const std::vector<Candidate>& candidates) {
    if (candidates.empty()) {
        throw ValidationError(ErrorKind::EmptyCandidateSet,
                              "comparative_advantage: no candidates");
    }
    bool have_choice = false;
    AdvantageChoice choice{0, 0.0, false};
    int minima = 0;
    for (const Candidate& candidate : candidates) {
        const double h =
            externality_metric(candidate.e_row, candidate.i_row, candidate.t).h;
        if (!have_choice || h < choice.h ||
            (h == choice.h && candidate.beta < choice.beta)) {
            if (!have_choice || h < choice.h) {
                minima = 1;
            } else {
                ++minima;
            }
            choice.beta = candidate.beta;
            choice.h = h;
            have_choice = true;
        } else if (h == choice.h) {
            ++minima;
        }
    }
    choice.tie = minima > 1;
    return choice;
}

const char* to_string(ExternalityClass cls) {
    switch (cls) {
        case ExternalityClass::Clean: return "clean";
        case ExternalityClass::MinorDefault: return "minor_default";
        case ExternalityClass::MajorDefault: return "major_default";
        case ExternalityClass::ExplicitExternality: return "explicit_externality";
    }
    return "?";
}

const char* to_string(NegativeTermNature nature) {
    switch (nature) {
        case NegativeTermNature::Negligence: return "negligence";
        case NegativeTermNature::MaliciousThinking: return "malicious_thinking";
    }
    return "?";
}

} // namespace fecon::industrial
