#ifndef RACAH_FOCK_HPP
#define RACAH_FOCK_HPP

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "racah/subset.hpp"

namespace racah {

/* Parameters of the concrete realization: mode count n, total level L,
 * central charges a_i > 0 and number-operator shifts beta_i > 0. The ladder
 * operators are scaled by sqrt(a_k), so every mode-k Casimir reduces to the
 * scalar a_k * beta_k. */
struct ModeParams {
    int n = 0;
    int level = 0;
    std::vector<double> a;
    std::vector<double> beta;

    /* a_i = i-th odd prime, beta_i = 1. */
    static ModeParams defaults(int n, int level);

    void validate() const; // throws ConfigError on violated invariants

    double a_sum(subset_t K) const;    // sum of a_i over i in K
    double beta_sum(subset_t K) const; // sum of beta_i over i in K
};

/* Occupation-number vector (m_1, ..., m_n) with fixed total sum. */
using MultiIndex = std::vector<int>;

/* The level-L subspace basis, enumerated once in colexicographic order
 * (last coordinate varies slowest) so all matrices are reproducible. */
class FockBasis {
public:
    FockBasis(int n, int level);
    explicit FockBasis(const ModeParams& params);

    int n() const { return m_n; }
    int level() const { return m_level; }
    int dim() const { return static_cast<int>(m_states.size()); }
    const MultiIndex& state(int idx) const;
    const std::vector<MultiIndex>& states() const { return m_states; }
    int index(const MultiIndex& m) const; // throws IndexError when absent

    static long long dimension(int n, int level); // binomial(level+n-1, n-1)

private:
    int m_n;
    int m_level;
    std::vector<MultiIndex> m_states;
    std::map<MultiIndex, int> m_lookup;
};

FockBasis enumerate_basis(const ModeParams& params);

/* Real matrix on V_L stored as sorted (row, col) -> value triples with a
 * dimension stamp. Supports the small amount of arithmetic the relation
 * checks need; dense() hands the matrix to Eigen for spectral work. */
class SparseOperator {
public:
    SparseOperator() = default;
    explicit SparseOperator(int dim);
    static SparseOperator identity(int dim);

    int dim() const { return m_dim; }
    std::size_t nnz() const { return m_entries.size(); }

    void add(int row, int col, double value); // accumulates onto the entry
    double entry(int row, int col) const;     // 0 when absent
    const std::map<std::pair<int, int>, double>& entries() const {
        return m_entries;
    }

    SparseOperator& operator+=(const SparseOperator& other);
    SparseOperator& operator-=(const SparseOperator& other);
    SparseOperator& operator*=(double scale);

    SparseOperator transpose() const;
    double norm() const; // Frobenius
    Eigen::MatrixXd dense() const;
    void prune(double threshold); // drop entries with |value| <= threshold

    bool same_entries(const SparseOperator& other) const; // exact comparison

private:
    void check_same_dim(const SparseOperator& other) const;

    int m_dim = 0;
    std::map<std::pair<int, int>, double> m_entries; // row-major key order
};

SparseOperator operator+(SparseOperator lhs, const SparseOperator& rhs);
SparseOperator operator-(SparseOperator lhs, const SparseOperator& rhs);
SparseOperator operator*(double scale, SparseOperator op);
SparseOperator operator*(const SparseOperator& lhs, const SparseOperator& rhs);

/* ||lhs - rhs||_F / (1 + ||lhs||_F + ||rhs||_F): the scale-aware residual
 * used by every relation check in the library. */
double relative_residual(const SparseOperator& lhs, const SparseOperator& rhs);

/* Realization of A_{0,k}: diagonal with entries m_k + beta_k. */
SparseOperator number_operator(const FockBasis& basis, const ModeParams& params, int k);

/* Level-preserving bilinear A_{+,i} A_{-,j} on V_L. For i != j it maps m to
 * sqrt(a_i a_j (m_i+1) m_j) times (m + e_i - e_j); for i == j it is diagonal
 * with entries a_i m_i. */
SparseOperator hopping_operator(const FockBasis& basis, const ModeParams& params, int i, int j);

/* Intermediate Casimir Q_K = a_K * sum_{i in K} A_{0,i} - sum_{i,j in K}
 * A_{+,i} A_{-,j}; assembled so the matrix is symmetric entry-for-entry. */
SparseOperator casimir(const FockBasis& basis, const ModeParams& params, subset_t K);

// Convenience overloads that enumerate the basis internally.
SparseOperator number_operator(const ModeParams& params, int k);
SparseOperator hopping_operator(const ModeParams& params, int i, int j);
SparseOperator casimir(const ModeParams& params, subset_t K);

} // namespace racah

#endif
