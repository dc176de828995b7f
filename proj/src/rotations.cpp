#include "racah/rotations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <Eigen/SVD>

#include "racah/errors.hpp"

namespace racah {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kOrthogonalTol = 1e-10;

/* Slot order of a labelling algebra: by node size, ties by smallest mode. */
std::vector<subset_t> slot_order(const LabellingAlgebra& algebra) {
    std::vector<subset_t> nodes(algebra.begin(), algebra.end());
    std::sort(nodes.begin(), nodes.end(), [](subset_t x, subset_t y) {
        int sx = subset_size(x);
        int sy = subset_size(y);
        if (sx != sy) return sx < sy;
        return subset_min_mode(x) < subset_min_mode(y);
    });
    return nodes;
}

int slot_of(const std::vector<subset_t>& slots, subset_t node) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i] == node) return static_cast<int>(i) + 1;
    }
    throw IndexError("slot_of: node " + subset_str(node) +
                     " is not part of the labelling algebra");
}

void check_orthogonal(const Eigen::MatrixXd& u, const std::string& who) {
    const int d = static_cast<int>(u.rows());
    double defect =
        (u.transpose() * u - Eigen::MatrixXd::Identity(d, d)).norm();
    if (defect > kOrthogonalTol) {
        std::ostringstream msg;
        msg << who << ": matrix is not orthogonal, defect " << defect;
        throw Error(msg.str());
    }
}

void check_proper(const Eigen::MatrixXd& u, const std::string& who) {
    check_orthogonal(u, who);
    double det = u.determinant();
    if (std::abs(det - 1.0) > kOrthogonalTol) {
        std::ostringstream msg;
        msg << who << ": determinant " << det << " is not +1";
        throw Error(msg.str());
    }
}

/* Trace-dual of each generator in the defining representation of the rank-r
 * special linear family, matching the ops layout of sl_family: Cartans
 * first, then e_{ij}/e_{ji} pairs for i < j ordered by (j - i, i). The dual
 * of h_s is diagonal with entries (d-s)/d on the first s slots and -s/d
 * after; the dual of e_{ij} is the unit matrix E_{ji}. */
std::vector<Eigen::MatrixXd> fundamental_patterns(int rank) {
    const int d = rank + 1;
    std::vector<Eigen::MatrixXd> patterns;
    for (int s = 1; s <= rank; ++s) {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            p(i, i) = (i < s) ? double(d - s) / d : -double(s) / d;
        }
        patterns.push_back(p);
    }
    for (int span = 1; span < d; ++span) {
        for (int i = 1; i + span <= d; ++i) {
            int j = i + span;
            Eigen::MatrixXd raise = Eigen::MatrixXd::Zero(d, d);
            raise(j - 1, i - 1) = 1.0;
            Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(d, d);
            lower(i - 1, j - 1) = 1.0;
            patterns.push_back(raise);
            patterns.push_back(lower);
        }
    }
    return patterns;
}

Eigen::MatrixXd restrict_to_sector(const SparseOperator& op,
                                   const Sector& sector) {
    return sector.frame.transpose() * op.dense() * sector.frame;
}

} // namespace

double planar_angle(double a_K, double a_L, double a_M) {
    if (!(a_K > 0.0) || !(a_L > 0.0) || !(a_M > 0.0)) {
        throw ConfigError("planar_angle: charges must be positive");
    }
    double ratio = (a_K * a_M) / ((a_K + a_L) * (a_L + a_M));
    return std::acos(std::sqrt(ratio));
}

double planar_angle(const ModeParams& params, subset_t K, subset_t L,
                    subset_t M) {
    if (K == 0 || L == 0 || M == 0 || !subsets_disjoint(K, L) ||
        !subsets_disjoint(K, M) || !subsets_disjoint(L, M)) {
        throw ConfigError("planar_angle: K, L, M must be non-empty and "
                          "pairwise disjoint");
    }
    return planar_angle(params.a_sum(K), params.a_sum(L), params.a_sum(M));
}

RotationMatrix embed_planar(const RotationStep& step, int dim) {
    if (step.axis_i < 1 || step.axis_j <= step.axis_i || step.axis_j > dim) {
        std::ostringstream msg;
        msg << "embed_planar: plane (" << step.axis_i << ", " << step.axis_j
            << ") does not fit dimension " << dim;
        throw IndexError(msg.str());
    }
    double phi = step.angle + step.offset;
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(dim, dim);
    const int i = step.axis_i - 1;
    const int j = step.axis_j - 1;
    u(i, i) = std::cos(phi);
    u(i, j) = -std::sin(phi);
    u(j, i) = std::sin(phi);
    u(j, j) = std::cos(phi);
    return RotationMatrix{u, 0.0};
}

std::vector<RotationStep> rotation_step(const ModeParams& params,
                                        const LabellingAlgebra& before,
                                        const SwapMove& move) {
    LabellingAlgebra after;
    bool found = false;
    for (subset_t node : before) {
        if (node == move.removed) {
            after.push_back(move.added);
            found = true;
        } else {
            after.push_back(node);
        }
    }
    if (!found) {
        throw ConfigError("rotation_step: swapped node " +
                          subset_str(move.removed) +
                          " is not part of the starting algebra");
    }
    int slot_before = slot_of(slot_order(before), move.removed);
    int slot_after = slot_of(slot_order(after), move.added);
    if (slot_before != slot_after) {
        std::ostringstream msg;
        msg << "rotation_step: swap " << subset_str(move.removed) << " -> "
            << subset_str(move.added) << " moves between slots "
            << slot_before << " and " << slot_after
            << "; no documented planar template";
        throw ConfigError(msg.str());
    }

    const int dim = params.n - 1;
    const int p = slot_before;
    const double theta = planar_angle(params, move.K, move.L, move.M);
    const int k_size = subset_size(move.K);
    const int m_size = subset_size(move.M);
    const int min_k = subset_min_mode(move.K);
    const int min_l = subset_min_mode(move.L);
    const int min_m = subset_min_mode(move.M);

    /* Where the kept block L sits relative to the departing block K and the
     * arriving block M, by smallest mode. The middle cases give a plain
     * planar turn; the extremal cases pick up a half-turn factor in a second
     * plane on top of it (a reflection in each coordinate except one). */
    enum class Pos { Smallest, Ascending, Descending, Largest };
    Pos pos;
    if (min_l < min_k && min_l < min_m) {
        pos = Pos::Smallest;
    } else if (min_l > min_k && min_l > min_m) {
        pos = Pos::Largest;
    } else {
        pos = (min_k < min_m) ? Pos::Ascending : Pos::Descending;
    }

    RotationStep turn;
    turn.axis_i = p;
    turn.axis_j = p + 1;
    turn.K = move.K;
    turn.L = move.L;
    turn.M = move.M;

    /* Half-turn factor preceding the planar turn, for the templates that
     * need one: a rotation by pi in the plane of the two axes other than
     * keep_axis. Only meaningful when exactly two axes are negated, so the
     * extremal-L templates are confined to dimension 3. */
    auto half_turn = [&](int keep_axis) {
        if (dim != 3) {
            std::ostringstream msg;
            msg << "rotation_step: swap " << subset_str(move.removed)
                << " -> " << subset_str(move.added)
                << " needs a coordinate reflection, which is only a "
                   "rotation in dimension 3 (here dimension " << dim << ")";
            throw ConfigError(msg.str());
        }
        RotationStep f;
        int axes[2];
        int t = 0;
        for (int a = 1; a <= 3; ++a) {
            if (a != keep_axis) axes[t++] = a;
        }
        f.axis_i = axes[0];
        f.axis_j = axes[1];
        f.angle = std::numbers::pi;
        f.offset = 0.0;
        f.K = move.K;
        f.L = move.L;
        f.M = move.M;
        return f;
    };

    std::vector<RotationStep> steps;
    if (k_size == m_size) {
        switch (pos) {
        case Pos::Ascending:
            turn.angle = theta;
            turn.offset = 0.0;
            break;
        case Pos::Descending:
            turn.angle = -theta;
            turn.offset = 0.0;
            break;
        case Pos::Smallest:
            steps.push_back(half_turn(p + 1));
            turn.angle = theta;
            turn.offset = 0.0;
            break;
        case Pos::Largest:
            steps.push_back(half_turn(p == 1 ? p : p + 1));
            turn.angle = -theta;
            turn.offset = 0.0;
            break;
        }
    } else if (k_size > m_size) {
        /* The swapped node shrinks: compound K departs. */
        if (pos == Pos::Ascending) {
            turn.angle = theta;
            turn.offset = -kHalfPi;
        } else if (pos == Pos::Largest) {
            steps.push_back(half_turn(p));
            turn.angle = -theta;
            turn.offset = -kHalfPi;
        } else {
            std::ostringstream msg;
            msg << "rotation_step: swap triple K=" << subset_str(move.K)
                << " L=" << subset_str(move.L) << " M=" << subset_str(move.M)
                << " matches no documented planar template";
            throw ConfigError(msg.str());
        }
    } else {
        /* The swapped node grows: compound M arrives. */
        if (pos == Pos::Descending) {
            turn.angle = -theta;
            turn.offset = kHalfPi;
        } else if (pos == Pos::Largest) {
            steps.push_back(half_turn(p));
            turn.angle = -theta;
            turn.offset = -kHalfPi;
        } else {
            std::ostringstream msg;
            msg << "rotation_step: swap triple K=" << subset_str(move.K)
                << " L=" << subset_str(move.L) << " M=" << subset_str(move.M)
                << " matches no documented planar template";
            throw ConfigError(msg.str());
        }
    }
    steps.push_back(turn);
    return steps;
}

RotationMatrix compose_rotations(const std::vector<RotationStep>& steps,
                                 int dim) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(dim, dim);
    for (const RotationStep& step : steps) {
        u = u * embed_planar(step, dim).entries;
    }
    check_proper(u, "compose_rotations");
    return RotationMatrix{u, 0.0};
}

RotationMatrix compose_rotations(const ModeParams& params,
                                 const LabellingAlgebra& start,
                                 const std::vector<SwapMove>& moves) {
    std::vector<RotationStep> steps;
    LabellingAlgebra current = start;
    for (const SwapMove& move : moves) {
        std::vector<RotationStep> part = rotation_step(params, current, move);
        steps.insert(steps.end(), part.begin(), part.end());
        for (subset_t& node : current) {
            if (node == move.removed) node = move.added;
        }
        std::sort(current.begin(), current.end(), [](subset_t x, subset_t y) {
            int sx = subset_size(x);
            int sy = subset_size(y);
            if (sx != sy) return sx < sy;
            return x < y;
        });
    }
    return compose_rotations(steps, params.n - 1);
}

SlFamily sl_family(const FockBasis& basis, const ModeParams& params,
                   const CouplingTree& tree) {
    std::vector<subset_t> slots = slot_order(tree.labelling_algebra());
    const int rank = static_cast<int>(slots.size());
    if (rank < 1) {
        throw ConfigError("sl_family: the tree has no internal non-root "
                          "nodes to attach generators to");
    }

    /* Slot 0 uses the tree's stored orientation as-is. Every later slot
     * must interlock with its predecessor so the assembled family closes
     * under the standard chain brackets. When the predecessor is a child
     * of the current node the plain ladder already does; when it is the
     * sibling, the ladder has to be paired against the partner that
     * contains the node's own left child and then transposed, otherwise
     * the cross brackets [e_{i,i+1}, e_{i+1,i+2}] vanish and the family
     * does not span a special linear algebra. Other adjacencies are not
     * documented and are rejected. */
    std::vector<SlTriple> triples;
    for (int s = 0; s < rank; ++s) {
        subset_t node = slots[s];
        if (s == 0) {
            triples.push_back(sl_generators(basis, params, tree, node));
            continue;
        }
        CouplingTree::NodeContext ctx = tree.context(node);
        if (ctx.K == slots[s - 1] || ctx.L == slots[s - 1]) {
            triples.push_back(sl_generators(basis, params, tree, node));
        } else if (ctx.M == slots[s - 1]) {
            SlTriple t =
                sl_generators(basis, params, tree.twisted(node), node);
            SlTriple flipped;
            flipped.e = t.f;
            flipped.f = t.e;
            flipped.h = -1.0 * t.h;
            flipped.node = t.node;
            flipped.lambda = t.lambda;
            triples.push_back(flipped);
        } else {
            throw ConfigError(
                "sl_family: slot node " + subset_str(node) +
                " neither has the previous slot as its left child nor as "
                "its sibling; this tree shape has no documented chain "
                "arrangement");
        }
    }

    SlFamily family;
    family.fundamental_dim = rank + 1;
    family.algebra = tree.labelling_algebra();
    for (const SlTriple& triple : triples) {
        family.ops.push_back(triple.h);
    }
    /* Raising/lowering pairs ordered by (span, start): adjacent pairs come
     * straight from the slot triples, wider spans are nested commutators
     * e_{ij} = [e_{i,i+1}, e_{i+1,j}] and e_{ji} = [e_{j,j-1}, e_{j-1,i}]. */
    std::vector<std::vector<SparseOperator>> raise(rank + 2),
        lower(rank + 2);
    for (int i = 1; i <= rank; ++i) {
        raise[i].resize(rank + 2, SparseOperator(basis.dim()));
        lower[i].resize(rank + 2, SparseOperator(basis.dim()));
        raise[i][i + 1] = triples[i - 1].e;
        lower[i][i + 1] = triples[i - 1].f;
    }
    for (int span = 1; span <= rank; ++span) {
        for (int i = 1; i + span <= rank + 1; ++i) {
            int j = i + span;
            if (span >= 2) {
                raise[i][j] = commutator(raise[i][i + 1], raise[i + 1][j]);
                lower[i][j] = commutator(lower[j - 1][j], lower[i][j - 1]);
            }
            family.ops.push_back(raise[i][j]);
            family.ops.push_back(lower[i][j]);
        }
    }
    family.patterns = fundamental_patterns(rank);
    return family;
}

RotationMatrix solve_conjugation(const SlFamily& family, const SlFamily& tilde,
                                 const Sector& sector) {
    const int d = family.fundamental_dim;
    if (d != tilde.fundamental_dim) {
        throw DimensionMismatch("solve_conjugation: families have different "
                                "fundamental dimensions");
    }
    if (d != 2 && d != 3) {
        throw ConfigError("solve_conjugation: documented fundamental "
                          "dimensions are 2 and 3");
    }
    const int m = static_cast<int>(family.ops.size());
    if (m != static_cast<int>(tilde.ops.size())) {
        throw DimensionMismatch("solve_conjugation: families have different "
                                "generator counts");
    }
    const int s_dim = sector.dim();

    std::vector<Eigen::MatrixXd> x(m), y(m);
    for (int a = 0; a < m; ++a) {
        x[a] = restrict_to_sector(family.ops[a], sector);
        y[a] = restrict_to_sector(tilde.ops[a], sector);
    }

    /* Least-squares expansion of each tilde generator over the original
     * family under the trace pairing on the sector. */
    Eigen::MatrixXd gram(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            gram(a, b) = (x[a] * x[b]).trace() / s_dim;
            gram(b, a) = gram(a, b);
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (lu.rank() < m) {
        throw Error("solve_conjugation: the generator family is linearly "
                    "dependent on this sector; pick a larger sector");
    }
    Eigen::MatrixXd coeffs(m, m); // row a: tilde_a over the original ops
    for (int a = 0; a < m; ++a) {
        Eigen::VectorXd rhs(m);
        for (int b = 0; b < m; ++b) {
            rhs(b) = (y[a] * x[b]).trace() / s_dim;
        }
        coeffs.row(a) = lu.solve(rhs).transpose();
    }
    for (int a = 0; a < m; ++a) {
        Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(s_dim, s_dim);
        for (int b = 0; b < m; ++b) {
            recon += coeffs(a, b) * x[b];
        }
        double defect = (y[a] - recon).norm() / (1.0 + y[a].norm());
        if (defect > 1e-8) {
            std::ostringstream msg;
            msg << "solve_conjugation: tilde generator " << a
                << " is outside the span of the original family, residual "
                << defect;
            throw Error(msg.str());
        }
    }

    /* Transfer the expansion onto the defining-representation patterns and
     * solve U Ptilde_b = P_b U for all b at once. */
    std::vector<Eigen::MatrixXd> transferred(m);
    for (int b = 0; b < m; ++b) {
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
        for (int a = 0; a < m; ++a) {
            p += coeffs(a, b) * family.patterns[a];
        }
        transferred[b] = p;
    }
    const int dd = d * d;
    Eigen::MatrixXd stacked(m * dd, dd);
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
    for (int b = 0; b < m; ++b) {
        Eigen::MatrixXd block(dd, dd);
        for (int p = 0; p < d; ++p) {
            for (int q = 0; q < d; ++q) {
                // vec(U * Pt) = (Pt^T kron I) vec U, vec(P * U) = (I kron P) vec U
                block.block(p * d, q * d, d, d) =
                    transferred[b](q, p) * eye -
                    (p == q ? family.patterns[b]
                            : Eigen::MatrixXd::Zero(d, d));
            }
        }
        stacked.middleRows(b * dd, dd) = block;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    double scale = sv(0);
    if (sv(dd - 1) > 1e-8 * (1.0 + scale)) {
        throw Error("solve_conjugation: the intertwiner equations have no "
                    "null direction; the families are not conjugate");
    }
    if (dd >= 2 && sv(dd - 2) < 1e-6 * (1.0 + scale)) {
        throw Error("solve_conjugation: the intertwiner is not unique on "
                    "this sector");
    }
    Eigen::VectorXd vec_u = svd.matrixV().col(dd - 1);
    Eigen::MatrixXd u(d, d);
    for (int q = 0; q < d; ++q) {
        u.col(q) = vec_u.segment(q * d, d);
    }

    double det = u.determinant();
    u /= std::pow(std::abs(det), 1.0 / d);
    det = u.determinant();
    if (d % 2 == 1) {
        if (det < 0.0) u = -u;
    } else {
        for (int i = 0; i < d; ++i) {
            if (std::abs(u(i, 0)) > 1e-12) {
                if (u(i, 0) < 0.0) u = -u;
                break;
            }
        }
    }
    check_orthogonal(u, "solve_conjugation");

    double residual = 0.0;
    Eigen::MatrixXd u_inv = u.transpose();
    for (int b = 0; b < m; ++b) {
        double defect =
            (u * transferred[b] * u_inv - family.patterns[b]).norm() /
            (1.0 + family.patterns[b].norm());
        residual = std::max(residual, defect);
    }
    return RotationMatrix{u, residual};
}

} // namespace racah
