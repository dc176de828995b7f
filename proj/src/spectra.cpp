#include "racah/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "racah/errors.hpp"

namespace racah {

namespace {

double cluster_threshold(const Eigen::VectorXd& values) {
    const double radius =
        values.size() ? std::max(std::abs(values(0)),
                                 std::abs(values(values.size() - 1)))
                      : 0.0;
    return 1e-8 * (1.0 + radius);
}

void fix_column_signs(Eigen::MatrixXd& vectors) {
    for (int c = 0; c < vectors.cols(); ++c) {
        int lead = 0;
        double best = -1.0;
        for (int r = 0; r < vectors.rows(); ++r) {
            const double magnitude = std::abs(vectors(r, c));
            if (magnitude > best + 1e-12) { // ties keep the lowest row
                best = magnitude;
                lead = r;
            }
        }
        if (vectors(lead, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

} // namespace

std::vector<Sector> sector_decompose(const FockBasis& basis,
                                     const ModeParams& params) {
    const SparseOperator q_total = casimir(basis, params, subset_full(params.n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q_total.dense());
    if (solver.info() != Eigen::Success)
        throw Error("eigensolver failed on the total Casimir");
    const Eigen::VectorXd values = solver.eigenvalues(); // ascending
    const Eigen::MatrixXd vectors = solver.eigenvectors();
    const double threshold = cluster_threshold(values);

    std::vector<Sector> sectors;
    int start = 0;
    while (start < values.size()) {
        int stop = start + 1;
        while (stop < values.size() &&
               std::abs(values(stop) - values(start)) <= threshold)
            ++stop;
        Sector sector;
        sector.frame = vectors.middleCols(start, stop - start);
        sector.q_total = values.segment(start, stop - start).mean();
        sectors.push_back(std::move(sector));
        start = stop;
    }
    // Largest eigenvalue (largest module) first.
    std::reverse(sectors.begin(), sectors.end());
    for (int i = 0; i < static_cast<int>(sectors.size()); ++i)
        sectors[i].index = i;
    return sectors;
}

std::vector<Sector> sector_decompose(const ModeParams& params) {
    return sector_decompose(FockBasis(params), params);
}

LabelledBasis joint_eigenbasis(const FockBasis& basis, const ModeParams& params,
                               const Sector& sector, const CouplingTree& tree) {
    const int d = sector.dim();
    LabelledBasis result;
    result.sector = sector;
    result.nodes = tree.labelling_algebra();
    const int node_count = static_cast<int>(result.nodes.size());

    // Restrict each labelling operator to the sector and confirm the family
    // still commutes there.
    std::vector<Eigen::MatrixXd> restricted;
    for (subset_t A : result.nodes) {
        const SparseOperator qA = casimir(basis, params, A);
        restricted.push_back(sector.frame.transpose() * qA.dense() *
                             sector.frame);
    }
    for (int i = 0; i < node_count; ++i) {
        for (int j = i + 1; j < node_count; ++j) {
            const Eigen::MatrixXd comm = restricted[i] * restricted[j] -
                                         restricted[j] * restricted[i];
            const double scale =
                restricted[i].norm() * restricted[j].norm() + 1e-300;
            if (comm.norm() / scale > 1e-10) {
                std::ostringstream msg;
                msg << "restricted operators " << subset_str(result.nodes[i])
                    << " and " << subset_str(result.nodes[j])
                    << " do not commute on the sector (relative "
                    << comm.norm() / scale << ")";
                throw NonCommuting(msg.str());
            }
        }
    }

    // Sequential refinement: diagonalize node by node inside the blocks
    // accumulated so far.
    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(d, d);
    std::vector<std::pair<int, int>> blocks{{0, d}}; // (offset, size)
    std::vector<std::vector<double>> value_by_node(node_count,
                                                   std::vector<double>(d, 0.0));
    for (int idx = 0; idx < node_count; ++idx) {
        const Eigen::MatrixXd rotated =
            C.transpose() * restricted[idx] * C;
        std::vector<std::pair<int, int>> refined;
        for (const auto& [offset, size] : blocks) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
                rotated.block(offset, offset, size, size));
            if (solver.info() != Eigen::Success)
                throw Error("eigensolver failed during refinement");
            C.middleCols(offset, size) =
                C.middleCols(offset, size) * solver.eigenvectors();
            const Eigen::VectorXd values = solver.eigenvalues();
            const double threshold = cluster_threshold(values);
            int start = 0;
            while (start < size) {
                int stop = start + 1;
                while (stop < size &&
                       std::abs(values(stop) - values(start)) <= threshold)
                    ++stop;
                refined.emplace_back(offset + start, stop - start);
                const double mean =
                    values.segment(start, stop - start).mean();
                for (int p = start; p < stop; ++p)
                    value_by_node[idx][offset + p] = mean;
                start = stop;
            }
        }
        blocks = std::move(refined);
    }

    // Simple joint spectrum: every accumulated block must be a single vector.
    for (const auto& [offset, size] : blocks) {
        if (size > 1) {
            std::ostringstream msg;
            msg << "joint label tuple at sector position " << offset
                << " has multiplicity " << size
                << "; charges a are not generic enough";
            throw DegenerateSpectrum(msg.str());
        }
    }

    // Eigenvalue ladders and integer ranks per node.
    result.ladders.resize(node_count);
    std::vector<std::vector<int>> rank_by_position(
        d, std::vector<int>(node_count, 0));
    for (int idx = 0; idx < node_count; ++idx) {
        std::vector<double> sorted = value_by_node[idx];
        std::sort(sorted.begin(), sorted.end());
        const double threshold =
            1e-8 * (1.0 + std::max(std::abs(sorted.front()),
                                   std::abs(sorted.back())));
        std::vector<double>& ladder = result.ladders[idx];
        for (double v : sorted)
            if (ladder.empty() || v - ladder.back() > threshold)
                ladder.push_back(v);
        for (int p = 0; p < d; ++p) {
            const double v = value_by_node[idx][p];
            const auto it = std::lower_bound(ladder.begin(), ladder.end(),
                                             v - threshold);
            rank_by_position[p][idx] =
                static_cast<int>(it - ladder.begin());
        }
    }

    // Order vectors by ascending integer label tuple.
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return rank_by_position[lhs] < rank_by_position[rhs];
    });

    result.vectors.resize(sector.frame.rows(), d);
    result.eigenvalues.resize(d);
    result.labels.resize(d);
    for (int v = 0; v < d; ++v) {
        const int p = order[v];
        result.vectors.col(v) = sector.frame * C.col(p);
        result.labels[v] = rank_by_position[p];
        result.eigenvalues[v].resize(node_count);
        for (int idx = 0; idx < node_count; ++idx)
            result.eigenvalues[v][idx] = value_by_node[idx][p];
    }
    fix_column_signs(result.vectors);
    return result;
}

namespace {

void check_same_sector(const LabelledBasis& b1, const LabelledBasis& b2) {
    if (b1.sector.frame.rows() != b2.sector.frame.rows() ||
        b1.dim() != b2.dim())
        throw DimensionMismatch("labelled bases live on different spaces");
    if (std::abs(b1.sector.q_total - b2.sector.q_total) >
        1e-8 * (1.0 + std::abs(b1.sector.q_total)))
        throw DimensionMismatch("labelled bases belong to different sectors");
    const Eigen::MatrixXd p1 =
        b1.sector.frame * b1.sector.frame.transpose();
    const Eigen::MatrixXd p2 =
        b2.sector.frame * b2.sector.frame.transpose();
    if ((p1 - p2).norm() > 1e-8 * (1.0 + p1.norm()))
        throw DimensionMismatch("labelled bases span different subspaces");
}

} // namespace

OverlapMatrix overlap_matrix(const LabelledBasis& b1, const LabelledBasis& b2) {
    check_same_sector(b1, b2);
    OverlapMatrix overlap;
    overlap.B = b2.vectors.transpose() * b1.vectors;
    overlap.row_nodes = b2.nodes;
    overlap.col_nodes = b1.nodes;
    overlap.row_labels = b2.labels;
    overlap.col_labels = b1.labels;
    return overlap;
}

} // namespace racah
