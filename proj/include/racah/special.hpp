#ifndef RACAH_SPECIAL_HPP
#define RACAH_SPECIAL_HPP

#include <vector>

#include <Eigen/Dense>

#include "racah/algebra.hpp"
#include "racah/fock.hpp"
#include "racah/spectra.hpp"
#include "racah/trees.hpp"

namespace racah {

/* Rising factorial (x)_m = x (x+1) ... (x+m-1), computed iteratively. */
double pochhammer(double x, int m);

/* Terminating Gauss series Σ_{t=0}^k ((-k)_t (b)_t / (c)_t) z^t / t!.
 * Throws Error when (c)_t vanishes before the series terminates. */
double hyp2f1_terminating(int k, double b, double c, double z);

/* Krawtchouk polynomial K_k(x; p, N) as the terminating Gauss series with
 * upper parameters -k, -x, lower parameter -N, argument 1/p. For p > 1/2
 * the equal value is computed through the Pfaff-reflected series at
 * argument 1/(1-p), which avoids the cancellation of the near-unit
 * argument. Guards: 0 <= k <= N (IndexError), 0 < p < 1 and N <= 30
 * (ConfigError). */
double krawtchouk(int k, double x, double p, int N);

/* Structure constants of the two-generator exchange for a disjoint triple
 * (K, L, M): R_h h + R_e e + R_f f reproduces the swapped Cartan element.
 * Invariant: R_e R_f + R_h^2 = 1. */
struct RTriple {
    double R_h = 0.0;
    double R_e = 0.0;
    double R_f = 0.0;
};

RTriple r_parameters(double a_K, double a_L, double a_M);
RTriple r_parameters(const ModeParams& params, subset_t K, subset_t L,
                     subset_t M);

/* Krawtchouk parameters attached to a single-swap move: p = (1 - R_h)/2 on
 * an (N+1)-dimensional block, with the originating triple kept alongside. */
struct KrawtchoukParams {
    double p = 0.5;
    int N = 0;
    subset_t K = 0;
    subset_t L = 0;
    subset_t M = 0;
    double R_h = 0.0;
};

KrawtchoukParams krawtchouk_from_swap(const ModeParams& params,
                                      const SwapMove& move, int N);

/* Recurrence kernel for the swap overlap columns:
 * kernel(k, x) = (-N)_k (1 - R_h)^k K_k((x+N)/2; (1-R_h)/2, N).
 * Satisfies x*kernel_k = kernel_{k+1} + R_h mu_k kernel_k
 *                      + R_e R_f k (N+1-k) kernel_{k-1}, mu_k = -N + 2k. */
double overlap_kernel(int k, double x, const RTriple& r, int N);

/* The sl2 triple attached to a swap, oriented so that the exchange identity
 * R_h h + R_e e + R_f f = tilde Cartan holds (right child of the swapped
 * node is the kept intersection move.L). */
SlTriple swap_sl2(const FockBasis& basis, const ModeParams& params,
                  const CouplingTree& t1, const SwapMove& move);

/* Cartan element of the post-swap node G2 = L ∪ M inside the same parent:
 * 2 Q_{G2}/a_{G2} - Q_B/a_B - Q_L/a_L - Q_M/a_M + Q_K/a_K. */
SparseOperator tilde_cartan(const FockBasis& basis, const ModeParams& params,
                            const SwapMove& move);

/* Closed-form counterpart of the numeric single-swap overlap on a sector:
 * entry (s, k) of each shared-label block is
 *   kernel(k, nu_s) / Π_{t=1}^{k} (f_{t-1,t} R_f)
 * with f read from the constructed sl2 triple and nu_s the tilde-Cartan
 * eigenvalue of row vector s. Each row of the numeric overlap is a scalar
 * multiple of the corresponding formula row; off-block entries are zero. */
Eigen::MatrixXd predicted_overlap(const FockBasis& basis,
                                  const ModeParams& params,
                                  const Sector& sector, const CouplingTree& t1,
                                  const CouplingTree& t2);

/* max over rows s of ||numeric_s - c_s * formula_s||_inf / ||numeric_s||_inf
 * with c_s the least-squares scale; measures scale-free row agreement. */
double row_proportionality_spread(const Eigen::MatrixXd& numeric,
                                  const Eigen::MatrixXd& formula);

/* Ordered product of single-swap overlaps along a vertex route in the
 * recoupling graph; equals the direct overlap between the end bases.
 * Throws ConfigError when consecutive vertices differ by more than one
 * generator or the route is empty. */
OverlapMatrix compose_overlaps(const FockBasis& basis, const ModeParams& params,
                               const Sector& sector,
                               const std::vector<LabellingAlgebra>& route);

/* Connection coefficients between the two pair-coupling bases of n = 4,
 * tagged with the data that indexes them: the sector eigenvalue, the scalar
 * singleton values, and the ladder of the summed-away middle generator
 * {1,2,3} crossed while relating the two bases. */
struct NineJSymbol {
    OverlapMatrix overlap; // rows: {13, 24} basis, cols: {12, 34} basis
    double q_total = 0.0;
    std::vector<double> central;
    subset_t summed_node = 0;
    std::vector<double> summed_ladder;
};

NineJSymbol nine_j(const FockBasis& basis, const ModeParams& params,
                   const Sector& sector);

} // namespace racah

#endif
