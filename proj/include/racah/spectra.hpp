#ifndef RACAH_SPECTRA_HPP
#define RACAH_SPECTRA_HPP

#include <vector>

#include <Eigen/Dense>

#include "racah/fock.hpp"
#include "racah/trees.hpp"

namespace racah {

/* One joint eigenspace of the central Casimir Q_[n] inside V_L: an
 * orthonormal column frame plus the eigenvalue it carries. */
struct Sector {
    Eigen::MatrixXd frame; // ambient_dim x dim, orthonormal columns
    double q_total = 0.0;
    int index = 0; // position in the decomposition order
    int dim() const { return static_cast<int>(frame.cols()); }
};

/* Eigenspaces of Q_[n] on V_L, ordered by descending eigenvalue (largest
 * module first); dimensions sum to dim V_L. */
std::vector<Sector> sector_decompose(const FockBasis& basis,
                                     const ModeParams& params);
std::vector<Sector> sector_decompose(const ModeParams& params);

/* A sector basis diagonalizing one tree's labelling algebra. Vectors are
 * columns of `vectors` (ambient coordinates), ordered by ascending integer
 * label tuple. labels[v][i] is the rank of vector v's eigenvalue inside the
 * sorted eigenvalue ladder of nodes[i]; eigenvalues[v][i] is the eigenvalue
 * itself; ladders[i] lists the distinct eigenvalues of nodes[i] on this
 * sector, ascending. */
struct LabelledBasis {
    Sector sector;
    LabellingAlgebra nodes;
    Eigen::MatrixXd vectors;
    std::vector<std::vector<double>> eigenvalues;
    std::vector<std::vector<int>> labels;
    std::vector<std::vector<double>> ladders;
    int dim() const { return static_cast<int>(vectors.cols()); }
};

/* Sequentially refine the sector frame into a joint eigenbasis of all Q_A in
 * the tree's labelling algebra (sorted node order). Eigenvalues within
 * 1e-8 * (1 + spectral radius) are clustered; signs follow the
 * largest-magnitude-component-positive convention. Throws NonCommuting when
 * the restricted operators fail to commute, DegenerateSpectrum when two
 * final label tuples coincide. */
LabelledBasis joint_eigenbasis(const FockBasis& basis, const ModeParams& params,
                               const Sector& sector, const CouplingTree& tree);

/* Connection coefficients between two labelled bases of the same sector:
 * B(s, k) = <row vector s of b2, column vector k of b1>, with label tuples
 * attached to both axes. Throws DimensionMismatch when the bases live on
 * different sectors. */
struct OverlapMatrix {
    Eigen::MatrixXd B; // rows: b2 vectors, cols: b1 vectors
    LabellingAlgebra row_nodes;
    LabellingAlgebra col_nodes;
    std::vector<std::vector<int>> row_labels;
    std::vector<std::vector<int>> col_labels;
};

OverlapMatrix overlap_matrix(const LabelledBasis& b1, const LabelledBasis& b2);

} // namespace racah

#endif
