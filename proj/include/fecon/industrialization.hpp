#pragma once

#include <vector>

#include "fecon/bid_engine.hpp"

namespace fecon::industrial {

using bid::BirkhoffDecomposition;
using bid::BirkhoffTerm;
using bid::BistochasticMatrix;
using bid::PermutationMatrix;

using Mask01 = std::vector<std::vector<int>>;

// Block layout over a base permutation: row i carries one square block of
// order block_orders[i] at base column base.image(i). Row blocks stack in
// row order; column widths follow from the base mapping, so the expanded
// matrix is square of order sum(block_orders).
struct BlockPattern {
    PermutationMatrix base;
    std::vector<int> block_orders; // order of the block in row i

    void validate() const;
    int functions() const noexcept { return base.order(); }
    int expanded_order() const;
    int row_offset(int i) const;
    int col_offset(int l) const;
    int col_order(int l) const; // width of block column l
};

struct BlockMatrix {
    BlockPattern pattern;
    std::vector<BistochasticMatrix> blocks; // per row i

    BistochasticMatrix assemble(double tol = 1e-9) const;
};

// Places each block at its base position and checks the assembly is doubly
// stochastic.
BlockMatrix block_expand(BlockPattern pattern, std::vector<BistochasticMatrix> blocks);

// Decomposition of the assembled matrix. Every term's support stays inside
// the block pattern and restricts to a permutation on each block; the shared
// coefficients reconstruct every block.
BirkhoffDecomposition block_birkhoff(const BlockMatrix& b);

// Restriction of a full-order permutation term to block row i. Throws when
// the restriction leaves the declared block or is not a bijection.
PermutationMatrix block_restrict(const PermutationMatrix& term, const BlockPattern& pattern,
                                 int i);

// Per-block decompositions of the parent operators. Component sums must
// reproduce the parent eigenvalues; signs are unrestricted.
struct SplitOperators {
    std::vector<std::vector<double>> e_split; // per function i, components E_{i,k}
    std::vector<std::vector<double>> i_split; // per block column l, components I_{l,j}
};

// Even split of the parent eigenvalues across each block, as a convenience
// default.
SplitOperators uniform_split(const std::vector<double>& e_parent,
                             const std::vector<double>& i_parent, const BlockPattern& pattern);

// Enforces the aggregation constraints sum_k E_{i,k} = E_i and
// sum_j I_{l,j} = I_l.
void check_split_conservation(const SplitOperators& splits,
                              const std::vector<double>& e_parent,
                              const std::vector<double>& i_parent, const BlockPattern& pattern,
                              double rel_tol = 1e-9);

// Budget of one block-level permutation term: sum of E_{i,k} * I_{l,pi(k)}.
double block_budget(const std::vector<double>& e_row, const std::vector<double>& i_row,
                    const PermutationMatrix& pi);
double block_budget(const SplitOperators& splits, int i, int l, const PermutationMatrix& pi);

// Logical OR of the chosen block-term supports, as the 0/1 technical
// selection matrix.
Mask01 technical_select(const std::vector<BirkhoffTerm>& terms, const std::vector<int>& chosen);

enum class ExternalityClass { Clean, MinorDefault, MajorDefault, ExplicitExternality };

// Sign reading of one negative product cell: a negative product with
// positive information is negligence, with negative information it marks a
// component used for something it was not meant for.
enum class NegativeTermNature { Negligence, MaliciousThinking };

struct NegativeTerm {
    int k;
    int l;
    double product;
    NegativeTermNature nature;
};

struct ExternalityReport {
    double h;
    ExternalityClass classification;
    std::vector<NegativeTerm> negative_terms;
};

// Bilinear externality metric H = sum_{k,l} E_k * t_{k,l} * I_l over the
// selected support, with its default classification:
//   explicit externality: every E component negative, every used I positive;
//   major default: H < 0; minor default: some negative used term with H > 0;
//   clean otherwise.
ExternalityReport externality_metric(const std::vector<double>& e_row,
                                     const std::vector<double>& i_row, const Mask01& t_selected);

struct Candidate {
    int beta;
    std::vector<double> e_row;
    std::vector<double> i_row;
    Mask01 t;
};

struct AdvantageChoice {
    int beta;
    double h;
    bool tie; // the minimum is attained by more than one candidate
};

// Candidate with the smallest externality metric; ties resolve to the lowest
// beta identifier and are flagged. The result does not depend on candidate
// order.
AdvantageChoice comparative_advantage(const std::vector<Candidate>& candidates);

const char* to_string(ExternalityClass cls);
const char* to_string(NegativeTermNature nature);

} // namespace fecon::industrial
