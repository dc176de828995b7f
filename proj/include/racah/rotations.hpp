#ifndef RACAH_ROTATIONS_HPP
#define RACAH_ROTATIONS_HPP

#include <vector>

#include <Eigen/Dense>

#include "racah/algebra.hpp"
#include "racah/fock.hpp"
#include "racah/spectra.hpp"
#include "racah/trees.hpp"

namespace racah {

/* Mixing angle of a disjoint triple (K, L, M):
 *   cos theta = sqrt(a_K a_M / (a_{KL} a_{LM})), theta in (0, pi/2),
 * where a_{KL} = a_K + a_L. Bridges to the exchange coefficients through
 * R_h = cos(2 theta). Throws ConfigError on non-positive charges. */
double planar_angle(double a_K, double a_L, double a_M);
double planar_angle(const ModeParams& params, subset_t K, subset_t L,
                    subset_t M);

/* One planar factor of a recoupling rotation: the (axis_i, axis_j)
 * coordinate plane (1-based, axis_i < axis_j) turns by angle + offset.
 * angle is the signed planar angle of the originating triple, which is
 * carried along; offset is 0 or +-pi/2 and records the quarter turn
 * acquired by swaps whose departing or arriving side is compound. Swaps
 * whose kept block is extremal also contribute a preparatory half turn
 * (angle pi, offset 0) in a second plane; such factors carry the same
 * (K, L, M) tag as the turn they precede. */
struct RotationStep {
    int axis_i = 1;
    int axis_j = 2;
    double angle = 0.0;
    double offset = 0.0;
    subset_t K = 0;
    subset_t L = 0;
    subset_t M = 0;
};

/* Real orthogonal matrix attached to a recoupling move or path. residual
 * carries the conjugation defect when the matrix came from the numeric
 * solver and is 0 for closed-form constructions. */
struct RotationMatrix {
    Eigen::MatrixXd entries;
    double residual = 0.0;

    int dim() const { return static_cast<int>(entries.rows()); }
};

/* Identity except the 2x2 block in the step's plane, rotated by
 * phi = angle + offset:
 *   ( cos phi  -sin phi )
 *   ( sin phi   cos phi )
 * rows/cols (axis_i, axis_j). Throws IndexError when an axis exceeds dim. */
RotationMatrix embed_planar(const RotationStep& step, int dim);

/* Classify a single swap K u L -> L u M against the documented planar
 * templates and return its factors, earliest leftmost. The turn lives in
 * the plane (p, p+1) where p is the slot of the swapped node among the
 * algebra's nodes ordered by (size, smallest mode); the swap must keep the
 * node in the same slot, otherwise there is no documented template and
 * ConfigError is thrown. With theta the planar angle of (K, L, M), the
 * turn is classified by where L's smallest mode sits relative to K's and
 * M's, and by whether the node changes size:
 *   same size,  min K < min L < min M -> R_p(+theta)
 *   same size,  min M < min L < min K -> R_p(-theta)
 *   same size,  L smallest            -> half turn, then R_p(+theta)
 *   same size,  L largest             -> half turn, then R_p(-theta)
 *   shrinking (compound K), ascending -> R_p(theta - pi/2)
 *   shrinking,  L largest             -> half turn, then R_p(-theta - pi/2)
 *   growing (compound M), descending  -> R_p(pi/2 - theta)
 *   growing,    L largest             -> half turn, then R_p(-theta - pi/2)
 * The half-turn factor is a rotation by pi in the plane of the two axes it
 * negates; it exists as a rotation only in dimension 3, so extremal-L
 * templates outside dimension 3 throw ConfigError, as does any remaining
 * shape. */
std::vector<RotationStep> rotation_step(const ModeParams& params,
                                        const LabellingAlgebra& before,
                                        const SwapMove& move);

/* Ordered product of planar factors, earliest step leftmost. The result is
 * checked to be orthogonal with determinant +1 to 1e-10. */
RotationMatrix compose_rotations(const std::vector<RotationStep>& steps,
                                 int dim);

/* Classify every move along a swap route starting from `start` and compose
 * the resulting planar factors. dim = n - 1. */
RotationMatrix compose_rotations(const ModeParams& params,
                                 const LabellingAlgebra& start,
                                 const std::vector<SwapMove>& moves);

/* The embedded special linear family labelled by a coupling tree, in slot
 * order (internal non-root nodes sorted by size then smallest mode): the
 * slot Cartans h_1..h_r, then the raising/lowering pairs e_{ij}/e_{ji} for
 * every i < j, adjacent pairs straight from the tree nodes and wider spans
 * as nested commutators. patterns holds the trace-dual arrangement of each
 * generator in the defining representation, the layout the conjugation
 * solver equates on both sides. */
struct SlFamily {
    std::vector<SparseOperator> ops;
    std::vector<Eigen::MatrixXd> patterns;
    int fundamental_dim = 0;
    LabellingAlgebra algebra;
};

SlFamily sl_family(const FockBasis& basis, const ModeParams& params,
                   const CouplingTree& tree);

/* Numeric counterpart of the closed-form planar factors. Expands each
 * member of `tilde` in the span of `family` by least squares over the
 * trace pairing on the sector (residual above 1e-8 throws), transfers the
 * expansion onto the defining-representation patterns and extracts the
 * one-dimensional null space of the stacked intertwiner equations. The
 * returned U conjugates the tilde pattern matrix onto the original one
 * (equivalently U^T carries the original onto the tilde side); it is
 * normalized to |det| = 1 with the sign fixed by det = +1 in odd
 * dimension and by a positive leading first-column entry in even
 * dimension. Documented fundamental dimensions are 2 and 3. */
RotationMatrix solve_conjugation(const SlFamily& family, const SlFamily& tilde,
                                 const Sector& sector);

} // namespace racah

#endif
