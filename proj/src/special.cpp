#include "racah/special.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "racah/errors.hpp"

namespace racah {

namespace {

constexpr int kDegreeCap = 30; // keeps Pochhammer products inside double range

void check_degree_cap(int N) {
    if (N < 0 || N > kDegreeCap) {
        std::ostringstream msg;
        msg << "degree cap N = " << N << " outside [0, " << kDegreeCap << "]";
        throw ConfigError(msg.str());
    }
}

} // namespace

double pochhammer(double x, int m) {
    if (m < 0) throw IndexError("pochhammer needs a non-negative length");
    double product = 1.0;
    for (int t = 0; t < m; ++t) product *= x + t;
    return product;
}

double hyp2f1_terminating(int k, double b, double c, double z) {
    if (k < 0) throw IndexError("series degree must be non-negative");
    double sum = 1.0;
    double term = 1.0;
    for (int t = 1; t <= k; ++t) {
        if (term == 0.0) break; // upper parameter already truncated the series
        const double denom = c + t - 1;
        if (denom == 0.0) {
            std::ostringstream msg;
            msg << "lower parameter " << c << " vanishes at term " << t
                << " before the series terminates";
            throw Error(msg.str());
        }
        term *= (-k + t - 1) * (b + t - 1) / denom * z / t;
        sum += term;
    }
    return sum;
}

double krawtchouk(int k, double x, double p, int N) {
    check_degree_cap(N);
    if (k < 0 || k > N) {
        std::ostringstream msg;
        msg << "degree k = " << k << " outside [0, N = " << N << "]";
        throw IndexError(msg.str());
    }
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("success probability p must lie in (0, 1)");
    // For p > 1/2 the series argument 1/p approaches 1 and consecutive terms
    // cancel badly. The Pfaff reflection
    //   2F1(-k, -x; -N; 1/p) = (-(1-p)/p)^k 2F1(-k, x-N; -N; 1/(1-p))
    // is exact and keeps the evaluated argument at 2 or more.
    if (p > 0.5)
        return std::pow(-(1.0 - p) / p, k) *
               hyp2f1_terminating(k, x - static_cast<double>(N),
                                  -static_cast<double>(N), 1.0 / (1.0 - p));
    return hyp2f1_terminating(k, -x, -static_cast<double>(N), 1.0 / p);
}

RTriple r_parameters(double a_K, double a_L, double a_M) {
    if (!(a_K > 0.0 && a_L > 0.0 && a_M > 0.0))
        throw ConfigError("exchange parameters need positive couplings");
    const double denom = (a_K + a_L) * (a_L + a_M);
    RTriple r;
    r.R_h = -(a_K * a_L - a_K * a_M + a_L * a_L + a_L * a_M) / denom;
    r.R_e = 2.0 * std::sqrt(a_K * a_L * a_M * (a_K + a_L + a_M)) / denom;
    r.R_f = r.R_e;
    return r;
}

RTriple r_parameters(const ModeParams& params, subset_t K, subset_t L,
                     subset_t M) {
    if (K == 0 || L == 0 || M == 0)
        throw ConfigError("exchange triple needs three non-empty subsets");
    if (!subsets_disjoint(K, L) || !subsets_disjoint(K, M) ||
        !subsets_disjoint(L, M))
        throw ConfigError("exchange triple must be pairwise disjoint");
    return r_parameters(params.a_sum(K), params.a_sum(L), params.a_sum(M));
}

KrawtchoukParams krawtchouk_from_swap(const ModeParams& params,
                                      const SwapMove& move, int N) {
    check_degree_cap(N);
    const RTriple r = r_parameters(params, move.K, move.L, move.M);
    KrawtchoukParams kp;
    kp.p = (1.0 - r.R_h) / 2.0;
    kp.N = N;
    kp.K = move.K;
    kp.L = move.L;
    kp.M = move.M;
    kp.R_h = r.R_h;
    return kp;
}

double overlap_kernel(int k, double x, const RTriple& r, int N) {
    check_degree_cap(N);
    if (k < 0 || k > N) {
        std::ostringstream msg;
        msg << "kernel degree k = " << k << " outside [0, N = " << N << "]";
        throw IndexError(msg.str());
    }
    const double p = (1.0 - r.R_h) / 2.0;
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("kernel requires |R_h| < 1");
    return pochhammer(-static_cast<double>(N), k) *
           std::pow(1.0 - r.R_h, k) *
           krawtchouk(k, (x + N) / 2.0, p, N);
}

SlTriple swap_sl2(const FockBasis& basis, const ModeParams& params,
                  const CouplingTree& t1, const SwapMove& move) {
    if (!t1.has_node(move.removed))
        throw ConfigError("swap move does not start at a node of the tree");
    const CouplingTree::NodeContext ctx = t1.context(move.removed);
    if ((ctx.K != move.K || ctx.L != move.L) &&
        (ctx.K != move.L || ctx.L != move.K))
        throw ConfigError("swap move children do not match the tree node");
    if (ctx.M != move.M)
        throw ConfigError("swap move sibling does not match the tree node");
    // Orientation fixing the exchange identity: the kept intersection
    // move.L must be the right child of the swapped node.
    if (ctx.L == move.L)
        return sl_generators(basis, params, t1, move.removed);
    return sl_generators(basis, params, t1.twisted(move.removed),
                         move.removed);
}

SparseOperator tilde_cartan(const FockBasis& basis, const ModeParams& params,
                            const SwapMove& move) {
    const subset_t parent = move.K | move.L | move.M;
    SparseOperator result =
        (2.0 / params.a_sum(move.added)) * casimir(basis, params, move.added);
    result -= (1.0 / params.a_sum(parent)) * casimir(basis, params, parent);
    result -= (1.0 / params.a_sum(move.L)) * casimir(basis, params, move.L);
    result -= (1.0 / params.a_sum(move.M)) * casimir(basis, params, move.M);
    result += (1.0 / params.a_sum(move.K)) * casimir(basis, params, move.K);
    return result;
}

namespace {

SwapMove single_swap_between(const LabellingAlgebra& alg1,
                             const LabellingAlgebra& alg2) {
    std::vector<subset_t> only1, only2;
    for (subset_t node : alg1)
        if (std::find(alg2.begin(), alg2.end(), node) == alg2.end())
            only1.push_back(node);
    for (subset_t node : alg2)
        if (std::find(alg1.begin(), alg1.end(), node) == alg1.end())
            only2.push_back(node);
    if (only1.size() != 1 || only2.size() != 1)
        throw ConfigError("labelling algebras are not related by one swap");
    SwapMove move;
    move.removed = only1[0];
    move.added = only2[0];
    move.K = move.removed & ~move.added;
    move.L = move.removed & move.added;
    move.M = move.added & ~move.removed;
    if (move.K == 0 || move.L == 0 || move.M == 0)
        throw ConfigError("generator exchange is not an elementary swap");
    return move;
}

// Group basis vectors by their labels at all nodes except `skip`.
std::map<std::vector<int>, std::vector<int>> shared_label_blocks(
    const LabelledBasis& b, subset_t skip) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
        if (b.nodes[i] != skip) kept.push_back(i);
    std::map<std::vector<int>, std::vector<int>> blocks;
    for (int v = 0; v < b.dim(); ++v) {
        std::vector<int> key;
        for (std::size_t i : kept) key.push_back(b.labels[v][i]);
        blocks[key].push_back(v);
    }
    return blocks;
}

} // namespace

Eigen::MatrixXd predicted_overlap(const FockBasis& basis,
                                  const ModeParams& params,
                                  const Sector& sector, const CouplingTree& t1,
                                  const CouplingTree& t2) {
    const SwapMove move =
        single_swap_between(t1.labelling_algebra(), t2.labelling_algebra());

    const LabelledBasis b1 = joint_eigenbasis(basis, params, sector, t1);
    const LabelledBasis b2 = joint_eigenbasis(basis, params, sector, t2);

    const auto col_blocks = shared_label_blocks(b1, move.removed);
    const auto row_blocks = shared_label_blocks(b2, move.added);
    if (col_blocks.size() != row_blocks.size())
        throw Error("shared-label blocks of the two bases do not match");

    const SlTriple triple = swap_sl2(basis, params, t1, move);
    const RTriple r = r_parameters(params, move.K, move.L, move.M);
    const Eigen::MatrixXd f_dense = triple.f.dense();
    const Eigen::MatrixXd h_tilde = tilde_cartan(basis, params, move).dense();

    Eigen::MatrixXd formula = Eigen::MatrixXd::Zero(b2.dim(), b1.dim());
    for (const auto& [key, cols] : col_blocks) {
        const auto rows_it = row_blocks.find(key);
        if (rows_it == row_blocks.end())
            throw Error("row block missing for a shared label tuple");
        const std::vector<int>& rows = rows_it->second;
        if (rows.size() != cols.size())
            throw Error("shared-label block is degenerate: row/column "
                        "dimensions differ");

        const int N = static_cast<int>(cols.size()) - 1;
        check_degree_cap(N);
        Eigen::MatrixXd psi(b1.vectors.rows(), N + 1);
        Eigen::MatrixXd phi(b2.vectors.rows(), N + 1);
        for (int k = 0; k <= N; ++k) psi.col(k) = b1.vectors.col(cols[k]);
        for (int s = 0; s <= N; ++s) phi.col(s) = b2.vectors.col(rows[s]);

        const Eigen::MatrixXd f_block = psi.transpose() * f_dense * psi;
        const Eigen::VectorXd nu =
            (phi.transpose() * h_tilde * phi).diagonal();

        std::vector<double> denom(N + 1, 1.0);
        for (int k = 1; k <= N; ++k)
            denom[k] = denom[k - 1] * f_block(k - 1, k) * r.R_f;

        for (int s = 0; s <= N; ++s)
            for (int k = 0; k <= N; ++k)
                formula(rows[s], cols[k]) =
                    overlap_kernel(k, nu(s), r, N) / denom[k];
    }
    return formula;
}

double row_proportionality_spread(const Eigen::MatrixXd& numeric,
                                  const Eigen::MatrixXd& formula) {
    if (numeric.rows() != formula.rows() || numeric.cols() != formula.cols())
        throw DimensionMismatch("spread requires equally sized matrices");
    double spread = 0.0;
    for (int s = 0; s < numeric.rows(); ++s) {
        const double denom = formula.row(s).squaredNorm();
        const double scale =
            denom > 0.0 ? numeric.row(s).dot(formula.row(s)) / denom : 0.0;
        const double reference =
            numeric.row(s).lpNorm<Eigen::Infinity>();
        if (reference == 0.0) continue;
        spread = std::max(spread,
                          (numeric.row(s) - scale * formula.row(s))
                                  .lpNorm<Eigen::Infinity>() /
                              reference);
    }
    return spread;
}

OverlapMatrix compose_overlaps(const FockBasis& basis, const ModeParams& params,
                               const Sector& sector,
                               const std::vector<LabellingAlgebra>& route) {
    if (route.empty())
        throw ConfigError("route needs at least one labelling algebra");
    for (std::size_t step = 1; step < route.size(); ++step)
        single_swap_between(route[step - 1], route[step]); // validates

    std::vector<LabelledBasis> bases;
    for (const auto& algebra : route)
        bases.push_back(joint_eigenbasis(
            basis, params, sector,
            CouplingTree::from_algebra(params.n, algebra)));

    Eigen::MatrixXd product =
        Eigen::MatrixXd::Identity(sector.dim(), sector.dim());
    for (std::size_t step = 1; step < bases.size(); ++step)
        product = overlap_matrix(bases[step - 1], bases[step]).B * product;

    OverlapMatrix out;
    out.B = std::move(product);
    out.row_nodes = bases.back().nodes;
    out.row_labels = bases.back().labels;
    out.col_nodes = bases.front().nodes;
    out.col_labels = bases.front().labels;
    return out;
}

NineJSymbol nine_j(const FockBasis& basis, const ModeParams& params,
                   const Sector& sector) {
    if (params.n != 4)
        throw ConfigError("pair-to-pair connection data requires n = 4");
    const subset_t s12 = subset_from_modes({1, 2}, 4);
    const subset_t s34 = subset_from_modes({3, 4}, 4);
    const subset_t s13 = subset_from_modes({1, 3}, 4);
    const subset_t s24 = subset_from_modes({2, 4}, 4);
    const subset_t s123 = subset_from_modes({1, 2, 3}, 4);

    const LabelledBasis start = joint_eigenbasis(
        basis, params, sector, CouplingTree::from_algebra(4, {s12, s34}));
    const LabelledBasis finish = joint_eigenbasis(
        basis, params, sector, CouplingTree::from_algebra(4, {s13, s24}));
    const LabelledBasis middle = joint_eigenbasis(
        basis, params, sector, CouplingTree::from_algebra(4, {s12, s123}));

    NineJSymbol result;
    result.overlap = overlap_matrix(start, finish);
    result.q_total = sector.q_total;
    for (int i = 1; i <= 4; ++i)
        result.central.push_back(params.a[i - 1] * params.beta[i - 1]);
    result.summed_node = s123;
    for (std::size_t idx = 0; idx < middle.nodes.size(); ++idx)
        if (middle.nodes[idx] == s123) result.summed_ladder = middle.ladders[idx];
    return result;
}

} // namespace racah
