#ifndef RACAH_ALGEBRA_HPP
#define RACAH_ALGEBRA_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "racah/fock.hpp"
#include "racah/trees.hpp"

namespace racah {

/* XY - YX with entries below 1e-14 * ||X|| * ||Y|| dropped, so exact-zero
 * commutators come out exactly empty. */
SparseOperator commutator(const SparseOperator& x, const SparseOperator& y);

/* Outcome of one relation instance. passed <=> residual <= the tolerance the
 * suite was run with; skipped instances carry a reason instead. */
struct RelationReport {
    std::string id;
    std::string context;
    double residual = 0.0;
    bool passed = false;
    bool skipped = false;
    std::string reason;
};

bool suite_passed(const std::vector<RelationReport>& reports);
double suite_max_residual(const std::vector<RelationReport>& reports);

/* Check the full catalogue of Casimir relations on V_L:
 *   - triple-union-sum        Q_{KLM} expanded over pairwise unions
 *   - linear-dependence       Q_K from pair and singleton Casimirs
 *   - commuting-pairs         [Q_K, Q_L] = 0 for nested or disjoint sets
 *   - pair-sum-commutator     [Q_ij, Q_jk] + [Q_ij, Q_ik] = 0
 *   - cyclic-commutators      the three shared-index commutators agree
 *   - four-index-commutator-sum   a-weighted linear relation on commutators
 *   - double-commutator-closure   [[Q_ij,Q_jk],Q_ij] as a Q-combination
 *   - double-commutator-mixed     [[Q_ij,Q_jk],Q_kl] as a Q-combination
 *   - dolan-grady             cubic commutator identity
 * One report per admissible index tuple; relations needing more modes than
 * params provides are reported as skipped. */
std::vector<RelationReport> verify_relation_suite(const ModeParams& params,
                                                  double tol);

/* One embedded sl2: raising e, lowering f, Cartan h = [e, f], attached to an
 * internal non-root tree node. */
struct SlTriple {
    SparseOperator e;
    SparseOperator f;
    SparseOperator h;
    subset_t node = 0;
    double lambda = 0.0;
};

/* Build the sl2 triple at internal node A of the tree. With children K
 * (left), L (right), sibling M and parent B:
 *   e_A = lambda * ([Q_A,[Q_A,Q_{LM}]] + a_A [Q_A,Q_{LM}])
 *   f_A = lambda * ([Q_A,[Q_A,Q_{LM}]] - a_A [Q_A,Q_{LM}])
 *   lambda = 1/sqrt(4 a_K a_L a_M a_A^2 a_B)
 * h_A = [e_A, f_A] is cross-checked against the closed form
 * 2Q_A/a_A - Q_B/a_B - Q_K/a_K - Q_L/a_L + Q_M/a_M; a mismatch throws. */
SlTriple sl_generators(const FockBasis& basis, const ModeParams& params,
                       const CouplingTree& tree, subset_t node);
SlTriple sl_generators(const ModeParams& params, const CouplingTree& tree,
                       subset_t node);

/* The n-2 triples of the chain tree, in slot order (node {1..k+1} at k). */
std::vector<SlTriple> chain_triples(const FockBasis& basis,
                                    const ModeParams& params);

/* Chevalley-Serre checks over a slot-ordered triple sequence:
 * Cartan commutativity, [e_i, f_j] = delta_ij h_i, Cartan weights from the
 * A_{ij} matrix (2 / -1 / 0), and the cubic relations on both sides. */
std::vector<RelationReport> verify_serre(const std::vector<SlTriple>& triples,
                                         double tol);

/* (1/2) S (S - 2) with S = Q_K/a_K + Q_L/a_L + Q_M/a_M - Q_{KLM}/a_{KLM};
 * commutes with the sl2 triple of the matching node and acts as
 * ((d-1)^2 + 2(d-1))/2 on a d-dimensional irreducible sector. */
SparseOperator sl2_casimir(const FockBasis& basis, const ModeParams& params,
                           subset_t K, subset_t L, subset_t M);
SparseOperator sl2_casimir(const ModeParams& params, subset_t K, subset_t L,
                           subset_t M);

/* The spanning family {Q_i} + {Q_[n]} + {Q_ij} + {[Q_1j, Q_jk], 1<j<k<=n}
 * whose flattened span has rank n^2 - n + 1 (one linear dependence). */
std::vector<SparseOperator> spanning_family(const FockBasis& basis,
                                            const ModeParams& params);

/* Singular values of the family flattened to vectors, descending. */
Eigen::VectorXd family_singular_values(const std::vector<SparseOperator>& family);

/* Singular values of the spanning family stacked over several charge draws:
 * row block s holds the family flattened at charges a_draws[s]. Singleton
 * Casimirs are scalars at any one draw, so the independence structure of the
 * family only appears once several generic draws are stacked; the lone
 * surviving dependence is the constant-coefficient pair-sum reduction of
 * Q_[n], leaving rank n^2 - n + 1. */
Eigen::VectorXd stacked_family_singular_values(
    int n, int level, const std::vector<std::vector<double>>& a_draws,
    const std::vector<double>& beta);

} // namespace racah

#endif
