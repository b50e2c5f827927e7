#pragma once

#include <utility>
#include <vector>

namespace fecon::bid {

// Doubly stochastic matrix: nonnegative entries with unit row and column
// sums. Construction validates and reports the first violated row/column.
class BistochasticMatrix {
  public:
    static BistochasticMatrix validated(std::vector<std::vector<double>> entries,
                                        double tol = 1e-9);

    int order() const noexcept { return n_; }
    double at(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<double>& raw() const noexcept { return entries_; } // row-major

  private:
    BistochasticMatrix(int n, std::vector<double> entries)
        : n_(n), entries_(std::move(entries)) {}

    int n_;
    std::vector<double> entries_;
};

// Permutation stored as the row -> column mapping of its unit entries.
class PermutationMatrix {
  public:
    explicit PermutationMatrix(std::vector<int> image);
    static PermutationMatrix identity(int n);

    int order() const noexcept { return static_cast<int>(image_.size()); }
    int image(int i) const { return image_[static_cast<size_t>(i)]; }
    const std::vector<int>& mapping() const noexcept { return image_; }
    int preimage(int j) const; // row whose 1 sits in column j

    bool operator==(const PermutationMatrix& other) const { return image_ == other.image_; }

  private:
    std::vector<int> image_;
};

struct BirkhoffTerm {
    double weight;
    PermutationMatrix perm;
};

struct BirkhoffDecomposition {
    std::vector<BirkhoffTerm> terms;

    double reconstruct(int i, int j) const;
    double weight_sum() const;
};

enum class OperatorKind { Cost, Information };

// Diagonal costing (E) or information (I) operator. Bid-stage eigenvalues
// are strictly positive.
struct DiagOperator {
    OperatorKind kind;
    std::vector<double> values;

    static DiagOperator cost(std::vector<double> values);
    static DiagOperator info(std::vector<double> values);

    int size() const noexcept { return static_cast<int>(values.size()); }
    double trace() const;
};

// Disjoint cycle decomposition; each cycle starts at its smallest element,
// cycles ordered by starting element.
std::vector<std::vector<int>> cycles_of(const PermutationMatrix& p);

// Constructive decomposition into weighted permutations: peel a perfect
// matching of the positive support, subtract the minimum matched entry,
// repeat. Matchings are explored in lexicographic row order with
// smallest-column-first tie-breaking, so equal inputs give equal outputs.
// Weights are renormalized to sum exactly 1; term count stays within
// n^2 - 2n + 2.
BirkhoffDecomposition birkhoff_decompose(const BistochasticMatrix& m,
                                         double support_tol = 1e-12);

// Budget interval (I_theta * Tr(E), E_p * Tr(I)). Requires I_theta <= Tr(I)
// and Tr(E) <= E_p; when a matrix is supplied, its per-row and per-column
// aggregates are checked against I_theta and E_p as well.
std::pair<double, double> rom_bounds(const DiagOperator& E, const DiagOperator& I,
                                     double I_theta, double E_p,
                                     const BistochasticMatrix* mf = nullptr);

// Budget of one permutation term: sum of E_i * I_{P(i)}.
double architect_budget(const DiagOperator& E, const DiagOperator& I,
                        const PermutationMatrix& p);

// Rearrangement bounds over all permutations: (opposite-sorted sum,
// similarly-sorted sum).
std::pair<double, double> budget_bounds(const DiagOperator& E, const DiagOperator& I);

enum class BidClass { Excellent, Attractive, Unsatisfactory };

struct SelectionReport {
    std::vector<double> weights;                    // W_beta
    std::vector<double> budgets;                    // b_beta
    std::vector<std::pair<double, double>> bounds;  // (b-, b+)
    double w_plus;
    double w_minus;
    double w_mean;
    std::vector<BidClass> classes;
    bool pathology; // W+ < W-
};

// Budget-weighted thresholds and per-term classification from raw weights,
// budgets and per-term bounds (all positive).
SelectionReport selection_report(std::vector<double> weights, std::vector<double> budgets,
                                 std::vector<double> lower, std::vector<double> upper);

// Same, with budgets from architect_budget and the rearrangement bounds used
// for every term.
SelectionReport selection_report(const BirkhoffDecomposition& decomp, const DiagOperator& E,
                                 const DiagOperator& I);

// Logical OR of the selected permutation supports, as a 0/1 matrix.
std::vector<std::vector<int>> superpose(const std::vector<PermutationMatrix>& selected);

const char* to_string(BidClass cls);

} // namespace fecon::bid
