#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "racah/algebra.hpp"
#include "racah/errors.hpp"
#include "racah/fock.hpp"
#include "racah/rotations.hpp"
#include "racah/special.hpp"
#include "racah/spectra.hpp"
#include "racah/trees.hpp"

using namespace racah;

namespace {

// Pinned pass/fail thresholds, one per criterion family.
constexpr double kTolRelations = 1e-9;  // defining relation catalogue
constexpr double kTolSerre = 1e-8;      // Chevalley-Serre chain relations
constexpr double kTolCasimir = 1e-8;    // sector Casimir scalars
constexpr double kMinRankGap = 1e6;     // singular-value gap at the rank cut
constexpr double kTolSpread = 1e-7;     // overlap-vs-formula row spread
constexpr double kTolParamId = 1e-12;   // R_e R_f + R_h^2 = 1, p = (1-R_h)/2
constexpr double kTolNineJ = 1e-7;      // summed-pair table reproduction
constexpr double kTolExample = 1e-8;    // documented matrices, up to sign
constexpr double kTolOrthogonal = 1e-10; // composed rotation orthogonality
constexpr double kTolDoubleAngle = 1e-12; // R_h = cos(2 theta)
constexpr double kTolEuler = 1e-7;      // planar product vs numeric solve
constexpr double kTolPaths = 1e-8;      // path independence of overlaps
constexpr double kTolGram = 1e-10;      // Krawtchouk orthogonality

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string sci(double v) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(2) << v;
    return out.str();
}

subset_t sub(const std::vector<int>& modes, int n) {
    return subset_from_modes(modes, n);
}

SwapMove make_move(subset_t removed, subset_t added) {
    SwapMove move;
    move.removed = removed;
    move.added = added;
    move.K = removed & ~added;
    move.L = removed & added;
    move.M = added & ~removed;
    return move;
}


double binomial(int n, int k) {
    double value = 1.0;
    for (int t = 0; t < k; ++t) value = value * (n - t) / (t + 1);
    return value;
}

// 1. Defining relation catalogue at desk-scale prime charges.
Outcome relation_catalogue() {
    double worst = 0.0;
    for (auto [n, level] :
         std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {5, 2}}) {
        ModeParams params = ModeParams::defaults(n, level);
        std::vector<RelationReport> reports =
            verify_relation_suite(params, kTolRelations);
        worst = std::max(worst, suite_max_residual(reports));
        if (!suite_passed(reports)) {
            for (const RelationReport& r : reports)
                if (!r.passed && !r.skipped)
                    return {false, "relation " + r.id + " [" + r.context +
                                       "] at (" + std::to_string(n) + "," +
                                       std::to_string(level) + ") residual " +
                                       sci(r.residual) + " > " +
                                       sci(kTolRelations)};
        }
    }
    return {true, "all relations on (n,L) = (3,3),(4,3),(5,2), max residual " +
                      sci(worst) + " <= " + sci(kTolRelations)};
}

// 2. Chevalley-Serre relations of the chain-tree generator family.
Outcome serre_chain() {
    double worst = 0.0;
    for (auto [n, level] : std::vector<std::pair<int, int>>{{4, 3}, {5, 2}}) {
        ModeParams params = ModeParams::defaults(n, level);
        FockBasis basis(params);
        std::vector<RelationReport> reports =
            verify_serre(chain_triples(basis, params), kTolSerre);
        worst = std::max(worst, suite_max_residual(reports));
        if (!suite_passed(reports)) {
            for (const RelationReport& r : reports)
                if (!r.passed && !r.skipped)
                    return {false, "relation " + r.id + " [" + r.context +
                                       "] at n=" + std::to_string(n) +
                                       " residual " + sci(r.residual) + " > " +
                                       sci(kTolSerre)};
        }
    }
    return {true, "chain generators for n = 4, 5, max residual " + sci(worst) +
                      " <= " + sci(kTolSerre)};
}

// 3. The quadratic Casimir acts as ((d-1)^2 + 2(d-1))/2 on each d-dim sector.
Outcome casimir_sector_scalars() {
    double worst = 0.0;
    for (int level = 1; level <= 4; ++level) {
        ModeParams params = ModeParams::defaults(3, level);
        FockBasis basis(params);
        Eigen::MatrixXd casimir =
            sl2_casimir(basis, params, sub({1}, 3), sub({2}, 3), sub({3}, 3))
                .dense();
        for (const Sector& sector : sector_decompose(basis, params)) {
            const int d = sector.dim();
            const double scalar = ((d - 1.0) * (d - 1.0) + 2.0 * (d - 1.0)) / 2.0;
            Eigen::MatrixXd restricted =
                sector.frame.transpose() * casimir * sector.frame;
            restricted -= scalar * Eigen::MatrixXd::Identity(d, d);
            const double residual = restricted.norm() / (1.0 + scalar);
            worst = std::max(worst, residual);
            if (residual > kTolCasimir)
                return {false, "sector " + std::to_string(sector.index) +
                                   " at (3," + std::to_string(level) +
                                   ") residual " + sci(residual) + " > " +
                                   sci(kTolCasimir)};
        }
    }
    return {true, "every sector of (3, L<=4), max residual " + sci(worst) +
                      " <= " + sci(kTolCasimir)};
}

// 4. Numerical rank of the flattened generator family at (4,3).
Outcome spanning_rank() {
    const std::vector<std::vector<double>> draws = {
        {2, 3, 5, 7}, {3, 5, 7, 11}, {5, 7, 11, 13}, {7, 11, 13, 2}};
    Eigen::VectorXd sv =
        stacked_family_singular_values(4, 3, draws, {1, 1, 1, 1});
    const int members = 4 * 4 - 4 + 2; // 14 generators listed
    const int rank = 4 * 4 - 4 + 1;    // 13 independent
    if (sv.size() != members)
        return {false, "family has " + std::to_string(sv.size()) +
                           " members, expected " + std::to_string(members)};
    const double gap = sv(rank - 1) / sv(rank);
    if (!(gap >= kMinRankGap))
        return {false, "singular-value gap " + sci(gap) + " < " +
                           sci(kMinRankGap) + " at rank " +
                           std::to_string(rank)};
    return {true, "rank " + std::to_string(rank) + " of " +
                      std::to_string(members) + " generators at (4,3), gap " +
                      sci(gap) + " >= " + sci(kMinRankGap)};
}

// 5. Single-swap overlaps match the Krawtchouk closed form row by row.
Outcome krawtchouk_bridge() {
    double worst_spread = 0.0;
    double worst_identity = 0.0;
    for (auto [n, level] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}}) {
        ModeParams params = ModeParams::defaults(n, level);
        FockBasis basis(params);
        RecouplingGraph g = recoupling_graph(n);

        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            for (const auto& [w, move] : g.adjacency[v]) {
                RTriple r = r_parameters(params, move.K, move.L, move.M);
                worst_identity = std::max(
                    worst_identity,
                    std::abs(r.R_e * r.R_f + r.R_h * r.R_h - 1.0));
                KrawtchoukParams kp = krawtchouk_from_swap(params, move, 1);
                worst_identity = std::max(
                    worst_identity, std::abs(kp.p - (1.0 - r.R_h) / 2.0));
            }

        for (const Sector& sector : sector_decompose(basis, params)) {
            std::vector<LabelledBasis> bases;
            std::vector<CouplingTree> trees;
            for (const LabellingAlgebra& algebra : g.vertices) {
                trees.push_back(CouplingTree::from_algebra(n, algebra));
                bases.push_back(
                    joint_eigenbasis(basis, params, sector, trees.back()));
            }
            for (std::size_t v = 0; v < g.vertices.size(); ++v)
                for (const auto& [w, move] : g.adjacency[v]) {
                    Eigen::MatrixXd numeric =
                        overlap_matrix(bases[v],
                                       bases[static_cast<std::size_t>(w)])
                            .B;
                    Eigen::MatrixXd formula = predicted_overlap(
                        basis, params, sector, trees[v],
                        trees[static_cast<std::size_t>(w)]);
                    const double spread =
                        row_proportionality_spread(numeric, formula);
                    worst_spread = std::max(worst_spread, spread);
                    if (spread > kTolSpread)
                        return {false,
                                "swap " + subset_str(move.removed) + " -> " +
                                    subset_str(move.added) + " at (" +
                                    std::to_string(n) + "," +
                                    std::to_string(level) + ") sector " +
                                    std::to_string(sector.index) + " spread " +
                                    sci(spread) + " > " + sci(kTolSpread)};
                }
        }
    }
    if (worst_identity > kTolParamId)
        return {false, "parameter identity residual " + sci(worst_identity) +
                           " > " + sci(kTolParamId)};
    return {true, "every swap overlap on (3,3) and (4,3), row spread " +
                      sci(worst_spread) + " <= " + sci(kTolSpread) +
                      ", parameter identities " + sci(worst_identity) +
                      " <= " + sci(kTolParamId)};
}

// 6. Summed-pair recoupling table: direct overlap vs composed routes.
Outcome nine_j_reproduction() {
    const int n = 4;
    const LabellingAlgebra pair_alg = {sub({1, 2}, n), sub({3, 4}, n)};
    const LabellingAlgebra cross_alg = {sub({1, 3}, n), sub({2, 4}, n)};
    const std::vector<LabellingAlgebra> route = {
        pair_alg,
        {sub({1, 2}, n), sub({1, 2, 3}, n)},
        {sub({1, 3}, n), sub({1, 2, 3}, n)},
        cross_alg};
    double worst = 0.0;
    for (int level = 1; level <= 3; ++level) {
        ModeParams params = ModeParams::defaults(n, level);
        FockBasis basis(params);
        CouplingTree pair_tree = CouplingTree::from_algebra(n, pair_alg);
        CouplingTree cross_tree = CouplingTree::from_algebra(n, cross_alg);
        for (const Sector& sector : sector_decompose(basis, params)) {
            LabelledBasis b1 = joint_eigenbasis(basis, params, sector, pair_tree);
            LabelledBasis b2 =
                joint_eigenbasis(basis, params, sector, cross_tree);
            Eigen::MatrixXd direct = overlap_matrix(b1, b2).B;
            Eigen::MatrixXd summed = nine_j(basis, params, sector).overlap.B;
            Eigen::MatrixXd composed =
                compose_overlaps(basis, params, sector, route).B;
            const double diff_summed =
                (direct - summed).cwiseAbs().maxCoeff();
            const double diff_composed =
                (direct - composed).cwiseAbs().maxCoeff();
            worst = std::max({worst, diff_summed, diff_composed});
            if (worst > kTolNineJ)
                return {false, "level " + std::to_string(level) + " sector " +
                                   std::to_string(sector.index) +
                                   " deviation " + sci(worst) + " > " +
                                   sci(kTolNineJ)};
        }
    }
    return {true, "direct vs summed vs 3-step route on (4, L<=3), max "
                  "deviation " +
                      sci(worst) + " <= " + sci(kTolNineJ)};
}

// 7. Tree counts, connectivity, and diameter of the recoupling graph.
Outcome graph_combinatorics() {
    const std::vector<std::size_t> expected = {1, 3, 15, 105, 945};
    for (int n = 2; n <= 6; ++n) {
        std::size_t count = enumerate_trees(n).size();
        if (count != expected[static_cast<std::size_t>(n - 2)])
            return {false, "tree count " + std::to_string(count) + " at n=" +
                               std::to_string(n) + ", expected " +
                               std::to_string(
                                   expected[static_cast<std::size_t>(n - 2)])};
        RecouplingGraph g = recoupling_graph(n);
        std::vector<bool> seen(g.vertices.size(), false);
        std::vector<int> queue{0};
        seen[0] = true;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (const auto& [w, move] :
                 g.adjacency[static_cast<std::size_t>(queue[head])])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    queue.push_back(w);
                }
        if (queue.size() != g.vertices.size())
            return {false, "recoupling graph disconnected at n=" +
                               std::to_string(n)};
        const int diameter = graph_diameter(g);
        const int bound = (n - 1) * (n - 2) / 2;
        if (diameter > bound)
            return {false, "diameter " + std::to_string(diameter) + " at n=" +
                               std::to_string(n) + " exceeds " +
                               std::to_string(bound)};
    }
    return {true, "counts 1,3,15,105,945 for n=2..6; connected; diameter "
                  "within (n-1)(n-2)/2"};
}

// 8. Closed-form rotation matrices and their numeric counterparts.
Outcome rotation_matrices() {
    // Documented example matrices, up to a global sign.
    auto sign_free_diff = [](const Eigen::MatrixXd& u,
                             const Eigen::MatrixXd& t) {
        return std::min((u - t).norm(), (u + t).norm());
    };
    double worst_example = 0.0;
    {
        ModeParams params = ModeParams::defaults(3, 3);
        params.a = {2.0, 3.0, 5.0};
        FockBasis basis(params);
        Sector sec = sector_decompose(basis, params).front();
        CouplingTree base = chain_tree(3);

        // Sibling twist acts as diag(1, -1).
        SlFamily f_base = sl_family(basis, params, base);
        SlFamily f_twist =
            sl_family(basis, params, base.twisted(sub({1, 2}, 3)));
        Eigen::MatrixXd twist_target(2, 2);
        twist_target << 1.0, 0.0, 0.0, -1.0;
        worst_example = std::max(
            worst_example,
            sign_free_diff(solve_conjugation(f_base, f_twist, sec).entries,
                           twist_target));

        // Single swap {1,2} -> {2,3} turns by the planar angle (pi/3 here).
        SlFamily f_cycle = sl_family(
            basis, params,
            CouplingTree::from_algebra(3, {sub({2, 3}, 3)}));
        const double c = 0.5, s = std::sqrt(3.0) / 2.0;
        Eigen::MatrixXd cycle_target(2, 2);
        cycle_target << c, -s, s, c;
        worst_example = std::max(
            worst_example,
            sign_free_diff(solve_conjugation(f_base, f_cycle, sec).entries,
                           cycle_target));
    }
    {
        ModeParams params = ModeParams::defaults(4, 2);
        params.a = {2.0, 3.0, 5.0, 7.0};
        FockBasis basis(params);
        Sector sec = sector_decompose(basis, params).front();
        SlFamily f_pair = sl_family(
            basis, params,
            CouplingTree::from_algebra(4, {sub({1, 2}, 4), sub({3, 4}, 4)}));
        SlFamily f_chain = sl_family(basis, params, chain_tree(4));
        const double c = std::sqrt(85.0 / 120.0), s = std::sqrt(35.0 / 120.0);
        Eigen::MatrixXd pair_target = Eigen::MatrixXd::Identity(3, 3);
        pair_target(1, 1) = c;
        pair_target(1, 2) = -s;
        pair_target(2, 1) = s;
        pair_target(2, 2) = c;
        worst_example = std::max(
            worst_example,
            sign_free_diff(solve_conjugation(f_pair, f_chain, sec).entries,
                           pair_target));
    }
    if (worst_example > kTolExample)
        return {false, "documented matrix deviation " + sci(worst_example) +
                           " > " + sci(kTolExample)};

    // Every classified swap and every multi-step route composes to a proper
    // orthogonal matrix.
    double worst_orth = 0.0;
    int composed_count = 0;
    auto check_proper = [&](const RotationMatrix& u) {
        const int d = u.dim();
        const double defect =
            (u.entries.transpose() * u.entries -
             Eigen::MatrixXd::Identity(d, d))
                .norm();
        const double det_defect = std::abs(u.entries.determinant() - 1.0);
        worst_orth = std::max({worst_orth, defect, det_defect});
        ++composed_count;
    };

    ModeParams params4 = ModeParams::defaults(4, 2);
    params4.a = {2.0, 3.0, 5.0, 7.0};
    RecouplingGraph g4 = recoupling_graph(4);
    int classified = 0, rejected = 0;
    for (std::size_t v = 0; v < g4.vertices.size(); ++v)
        for (const auto& [w, move] : g4.adjacency[v]) {
            try {
                check_proper(compose_rotations(params4, g4.vertices[v], {move}));
                ++classified;
            } catch (const ConfigError&) {
                ++rejected; // slot-crossing swaps have no planar template
            }
        }
    if (classified != 48 || rejected != 12)
        return {false, "template coverage " + std::to_string(classified) +
                           " classified / " + std::to_string(rejected) +
                           " rejected, expected 48 / 12"};

    const LabellingAlgebra pair_alg = {sub({1, 2}, 4), sub({3, 4}, 4)};
    const std::vector<SwapMove> euler_moves = {
        make_move(sub({3, 4}, 4), sub({1, 2, 3}, 4)),
        make_move(sub({1, 2}, 4), sub({1, 3}, 4)),
        make_move(sub({1, 2, 3}, 4), sub({2, 4}, 4))};
    check_proper(compose_rotations(params4, pair_alg, euler_moves));

    auto range_set = [](int lo, int hi, int n) {
        std::vector<int> modes;
        for (int m = lo; m <= hi; ++m) modes.push_back(m);
        return subset_from_modes(modes, n);
    };
    auto chain_moves = [&](int n) {
        std::vector<SwapMove> moves;
        for (int k = 2; k <= n - 1; ++k)
            for (int l = 1; l <= k - 1; ++l)
                moves.push_back(
                    make_move(range_set(l, k, n), range_set(l + 1, k + 1, n)));
        return moves;
    };
    check_proper(compose_rotations(
        params4, {sub({1, 2}, 4), sub({1, 2, 3}, 4)}, chain_moves(4)));
    ModeParams params5 = ModeParams::defaults(5, 1);
    params5.a = {2.0, 3.0, 5.0, 7.0, 11.0};
    check_proper(compose_rotations(
        params5, {sub({1, 2}, 5), sub({1, 2, 3}, 5), sub({1, 2, 3, 4}, 5)},
        chain_moves(5)));
    if (worst_orth > kTolOrthogonal)
        return {false, "orthogonality defect " + sci(worst_orth) + " > " +
                           sci(kTolOrthogonal)};

    // Exchange coefficient vs double angle across every swap triple, n <= 6.
    double worst_angle = 0.0;
    for (int n = 3; n <= 6; ++n) {
        ModeParams params = ModeParams::defaults(n, 1);
        RecouplingGraph g = recoupling_graph(n);
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            for (const auto& [w, move] : g.adjacency[v]) {
                RTriple r = r_parameters(params, move.K, move.L, move.M);
                const double theta =
                    planar_angle(params, move.K, move.L, move.M);
                worst_angle = std::max(
                    worst_angle, std::abs(r.R_h - std::cos(2.0 * theta)));
            }
    }
    if (worst_angle > kTolDoubleAngle)
        return {false, "|R_h - cos 2theta| = " + sci(worst_angle) + " > " +
                           sci(kTolDoubleAngle)};

    // The planar product over the 3-step route equals the end-to-end solve.
    ModeParams params43 = ModeParams::defaults(4, 3);
    params43.a = {2.0, 3.0, 5.0, 7.0};
    FockBasis basis43(params43);
    Sector sec43 = sector_decompose(basis43, params43).front();
    RotationMatrix euler =
        compose_rotations(params43, pair_alg, euler_moves);
    SlFamily f_pair = sl_family(
        basis43, params43, CouplingTree::from_algebra(4, pair_alg));
    SlFamily f_cross = sl_family(
        basis43, params43,
        CouplingTree::from_algebra(4, {sub({1, 3}, 4), sub({2, 4}, 4)}));
    RotationMatrix solved = solve_conjugation(f_pair, f_cross, sec43);
    const double euler_diff =
        (euler.entries - solved.entries).cwiseAbs().maxCoeff();
    if (euler_diff > kTolEuler)
        return {false, "planar product vs solve deviation " + sci(euler_diff) +
                           " > " + sci(kTolEuler)};

    return {true, "examples " + sci(worst_example) + "; " +
                      std::to_string(composed_count) +
                      " compositions proper to " + sci(worst_orth) +
                      "; double angle " + sci(worst_angle) +
                      "; planar product vs solve " + sci(euler_diff)};
}

// 9. Composed overlaps agree along distinct recoupling routes.
Outcome path_independence() {
    const int n = 4;
    ModeParams params = ModeParams::defaults(n, 3);
    FockBasis basis(params);
    RecouplingGraph g = recoupling_graph(n);
    const LabellingAlgebra pair_alg = {sub({1, 2}, n), sub({3, 4}, n)};
    const LabellingAlgebra cross_alg = {sub({1, 3}, n), sub({2, 4}, n)};
    const int s = g.index.at(pair_alg);
    const int t = g.index.at(cross_alg);

    // Three length-3 vertex routes with pairwise different interiors.
    std::vector<std::vector<LabellingAlgebra>> routes;
    std::vector<int> used_first;
    for (const auto& [x, m1] : g.adjacency[static_cast<std::size_t>(s)]) {
        if (x == t || std::find(used_first.begin(), used_first.end(), x) !=
                          used_first.end())
            continue;
        bool taken = false;
        for (const auto& [y, m2] : g.adjacency[static_cast<std::size_t>(x)]) {
            if (y == s || y == t || taken) continue;
            for (const auto& [z, m3] :
                 g.adjacency[static_cast<std::size_t>(y)])
                if (z == t) {
                    routes.push_back(
                        {pair_alg, g.vertices[static_cast<std::size_t>(x)],
                         g.vertices[static_cast<std::size_t>(y)], cross_alg});
                    used_first.push_back(x);
                    taken = true;
                    break;
                }
        }
        if (routes.size() == 3) break;
    }
    if (routes.size() != 3)
        return {false, "found only " + std::to_string(routes.size()) +
                           " distinct 3-step routes"};

    double worst = 0.0;
    for (const Sector& sector : sector_decompose(basis, params)) {
        std::vector<Eigen::MatrixXd> overlaps;
        for (const auto& route : routes)
            overlaps.push_back(
                compose_overlaps(basis, params, sector, route).B);
        for (std::size_t i = 0; i < overlaps.size(); ++i)
            for (std::size_t j = i + 1; j < overlaps.size(); ++j)
                worst = std::max(
                    worst,
                    (overlaps[i] - overlaps[j]).cwiseAbs().maxCoeff());
        if (worst > kTolPaths)
            return {false, "sector " + std::to_string(sector.index) +
                               " route disagreement " + sci(worst) + " > " +
                               sci(kTolPaths)};
    }
    return {true, "three routes on (4,3) agree pairwise to " + sci(worst) +
                      " <= " + sci(kTolPaths)};
}

// 10. Binomial-weight orthogonality of the evaluated polynomials.
Outcome krawtchouk_orthogonality() {
    const RTriple example = r_parameters(2.0, 3.0, 5.0);
    const RTriple defaults = r_parameters(3.0, 5.0, 7.0);
    const RTriple compound = r_parameters(3.0 + 5.0, 7.0, 11.0);
    const std::vector<double> ps = {0.25, (1.0 - example.R_h) / 2.0,
                                    (1.0 - defaults.R_h) / 2.0,
                                    (1.0 - compound.R_h) / 2.0};
    double worst = 0.0;
    for (double p : ps)
        for (int N : {4, 8, 12}) {
            Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(N + 1, N + 1);
            for (int x = 0; x <= N; ++x) {
                const double weight = binomial(N, x) * std::pow(p, x) *
                                      std::pow(1.0 - p, N - x);
                for (int k = 0; k <= N; ++k)
                    for (int m = k; m <= N; ++m)
                        gram(k, m) += weight * krawtchouk(k, x, p, N) *
                                      krawtchouk(m, x, p, N);
            }
            for (int k = 0; k <= N; ++k)
                for (int m = k + 1; m <= N; ++m)
                    worst = std::max(worst,
                                     std::abs(gram(k, m)) /
                                         std::sqrt(gram(k, k) * gram(m, m)));
            if (worst > kTolGram)
                return {false, "normalized off-diagonal " + sci(worst) +
                                   " > " + sci(kTolGram) + " at p=" + sci(p) +
                                   ", N=" + std::to_string(N)};
        }
    return {true, "N <= 12, p in {0.25, exchange samples}, off-diagonal " +
                      sci(worst) + " <= " + sci(kTolGram)};
}

} // namespace

int main() {
    struct Item {
        const char* name;
        Outcome (*check)();
    };
    const Item items[] = {
        {"defining relation catalogue", relation_catalogue},
        {"Chevalley-Serre chain relations", serre_chain},
        {"sector Casimir scalars", casimir_sector_scalars},
        {"spanning family rank", spanning_rank},
        {"Krawtchouk overlap bridge", krawtchouk_bridge},
        {"summed-pair recoupling table", nine_j_reproduction},
        {"recoupling graph combinatorics", graph_combinatorics},
        {"rotation matrix counterparts", rotation_matrices},
        {"overlap path independence", path_independence},
        {"Krawtchouk orthogonality", krawtchouk_orthogonality},
    };

    int failures = 0;
    int index = 0;
    for (const Item& item : items) {
        ++index;
        Outcome outcome;
        try {
            outcome = item.check();
        } catch (const std::exception& e) {
            outcome.passed = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        std::cout << (outcome.passed ? "[PASS]" : "[FAIL]") << " " << std::setw(2)
                  << index << " " << item.name << ": " << outcome.detail
                  << '\n';
        if (!outcome.passed) ++failures;
    }
    if (failures == 0) {
        std::cout << "acceptance: all 10 criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria failed\n";
    return 1;
}
