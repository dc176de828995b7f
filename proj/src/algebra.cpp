#include "racah/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "racah/errors.hpp"

namespace racah {

SparseOperator commutator(const SparseOperator& x, const SparseOperator& y) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("commutator of operators on different spaces");
    SparseOperator result = x * y - y * x;
    result.prune(1e-14 * x.norm() * y.norm());
    return result;
}

bool suite_passed(const std::vector<RelationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const RelationReport& r) { return r.skipped || r.passed; });
}

double suite_max_residual(const std::vector<RelationReport>& reports) {
    double worst = 0.0;
    for (const auto& r : reports)
        if (!r.skipped) worst = std::max(worst, r.residual);
    return worst;
}

// ---------------------------------------------------------------------------
// relation suite

namespace {

class SuiteBuilder {
public:
    SuiteBuilder(const ModeParams& params, double tol)
        : m_params(params), m_basis(params), m_tol(tol) {}

    const SparseOperator& q(subset_t K) {
        auto it = m_cache.find(K);
        if (it == m_cache.end())
            it = m_cache.emplace(K, casimir(m_basis, m_params, K)).first;
        return it->second;
    }

    void check(const std::string& id, const std::string& context,
               const SparseOperator& lhs, const SparseOperator& rhs) {
        RelationReport report;
        report.id = id;
        report.context = context;
        report.residual = relative_residual(lhs, rhs);
        report.passed = report.residual <= m_tol;
        m_reports.push_back(std::move(report));
    }

    void skip(const std::string& id, const std::string& reason) {
        RelationReport report;
        report.id = id;
        report.skipped = true;
        report.reason = reason;
        m_reports.push_back(std::move(report));
    }

    std::vector<RelationReport> take() { return std::move(m_reports); }

    const ModeParams& params() const { return m_params; }
    double a(int i) const { return m_params.a[i - 1]; }

private:
    const ModeParams& m_params;
    FockBasis m_basis;
    double m_tol;
    std::map<subset_t, SparseOperator> m_cache;
    std::vector<RelationReport> m_reports;
};

std::string tuple_context(std::initializer_list<int> indices) {
    std::ostringstream out;
    out << "(";
    bool first = true;
    for (int i : indices) {
        if (!first) out << ",";
        out << i;
        first = false;
    }
    out << ")";
    return out.str();
}

void check_triple_union_sum(SuiteBuilder& b, int n) {
    const subset_t full = subset_full(n);
    for (subset_t K = 1; K <= full; ++K) {
        for (subset_t L = K + 1; L <= full; ++L) {
            if ((K & L) != 0) continue;
            for (subset_t M = L + 1; M <= full; ++M) {
                if ((M & (K | L)) != 0) continue;
                SparseOperator rhs = b.q(K | L) + b.q(K | M) + b.q(L | M);
                rhs -= b.q(K);
                rhs -= b.q(L);
                rhs -= b.q(M);
                b.check("triple-union-sum",
                        "K=" + subset_str(K) + " L=" + subset_str(L) +
                            " M=" + subset_str(M),
                        b.q(K | L | M), rhs);
            }
        }
    }
}

void check_linear_dependence(SuiteBuilder& b, int n) {
    const subset_t full = subset_full(n);
    for (subset_t K = 1; K <= full; ++K) {
        if (subset_size(K) < 2) continue;
        const auto modes = subset_modes(K);
        SparseOperator rhs(b.q(K).dim());
        for (std::size_t p = 0; p < modes.size(); ++p)
            for (std::size_t r = p + 1; r < modes.size(); ++r)
                rhs += b.q(subset_singleton(modes[p]) |
                           subset_singleton(modes[r]));
        const double excess = static_cast<double>(modes.size()) - 2.0;
        for (int i : modes) rhs -= excess * b.q(subset_singleton(i));
        b.check("linear-dependence", "K=" + subset_str(K), b.q(K), rhs);
    }
}

void check_commuting_pairs(SuiteBuilder& b, int n) {
    const subset_t full = subset_full(n);
    for (subset_t K = 1; K <= full; ++K) {
        for (subset_t L = K + 1; L <= full; ++L) {
            if (!subsets_nested_or_disjoint(K, L)) continue;
            b.check("commuting-pairs",
                    "K=" + subset_str(K) + " L=" + subset_str(L),
                    commutator(b.q(K), b.q(L)), SparseOperator(b.q(K).dim()));
        }
    }
}

void check_pair_sum_commutator(SuiteBuilder& b, int n) {
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            for (int k = j + 1; k <= n; ++k) {
                if (k == i) continue;
                const subset_t ij = subset_from_modes({i, j}, n);
                const subset_t jk = subset_from_modes({j, k}, n);
                const subset_t ik = subset_from_modes({i, k}, n);
                b.check("pair-sum-commutator", tuple_context({i, j, k}),
                        commutator(b.q(ij), b.q(jk)) +
                            commutator(b.q(ij), b.q(ik)),
                        SparseOperator(b.q(ij).dim()));
            }
        }
    }
}

void check_cyclic_commutators(SuiteBuilder& b, int n) {
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                const subset_t ij = subset_from_modes({i, j}, n);
                const subset_t jk = subset_from_modes({j, k}, n);
                const subset_t ik = subset_from_modes({i, k}, n);
                const SparseOperator c1 = commutator(b.q(ij), b.q(jk));
                const SparseOperator c2 = commutator(b.q(jk), b.q(ik));
                const SparseOperator c3 = commutator(b.q(ik), b.q(ij));
                b.check("cyclic-commutators", tuple_context({i, j, k}) + " 1~2",
                        c1, c2);
                b.check("cyclic-commutators", tuple_context({i, j, k}) + " 2~3",
                        c2, c3);
            }
        }
    }
}

void check_four_index_sum(SuiteBuilder& b, int n) {
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    if (i == j || i == k || i == l || j == k || j == l || k == l)
                        continue;
                    const auto pair = [&](int p, int r) {
                        return subset_from_modes({p, r}, n);
                    };
                    SparseOperator lhs =
                        b.a(i) * commutator(b.q(pair(j, k)), b.q(pair(k, l)));
                    SparseOperator rhs =
                        b.a(j) * commutator(b.q(pair(i, k)), b.q(pair(k, l))) -
                        b.a(k) * commutator(b.q(pair(i, j)), b.q(pair(j, l))) +
                        b.a(l) * commutator(b.q(pair(i, j)), b.q(pair(j, k)));
                    b.check("four-index-commutator-sum",
                            tuple_context({i, j, k, l}), lhs, rhs);
                }
}

void check_double_commutator_closure(SuiteBuilder& b, int n) {
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (i == j || i == k || j == k) continue;
                const subset_t ij = subset_from_modes({i, j}, n);
                const subset_t jk = subset_from_modes({j, k}, n);
                const subset_t ik = subset_from_modes({i, k}, n);
                const double ai = b.a(i), aj = b.a(j), ak = b.a(k);
                SparseOperator lhs =
                    commutator(commutator(b.q(ij), b.q(jk)), b.q(ij));
                SparseOperator rhs = ak * (ai - aj) * b.q(ij);
                rhs -= ai * (ai + aj) * b.q(jk);
                rhs += aj * (ai + aj) * b.q(ik);
                rhs -= (aj + ak) * (ai + aj) * b.q(subset_singleton(i));
                rhs += (ai + ak) * (ai + aj) * b.q(subset_singleton(j));
                rhs += (ai * ai - aj * aj) * b.q(subset_singleton(k));
                b.check("double-commutator-closure", tuple_context({i, j, k}),
                        lhs, rhs);
            }
}

void check_double_commutator_mixed(SuiteBuilder& b, int n) {
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    if (i == j || i == k || i == l || j == k || j == l || k == l)
                        continue;
                    const auto pair = [&](int p, int r) {
                        return subset_from_modes({p, r}, n);
                    };
                    const auto single = [&](int p) {
                        return b.q(subset_singleton(p));
                    };
                    const double ai = b.a(i), aj = b.a(j), ak = b.a(k),
                                 al = b.a(l);
                    SparseOperator lhs = commutator(
                        commutator(b.q(pair(i, j)), b.q(pair(j, k))),
                        b.q(pair(k, l)));
                    SparseOperator rhs =
                        ai * al * (b.q(pair(j, k)) - single(j) - single(k));
                    rhs -= aj * al * (b.q(pair(i, k)) - single(i) - single(k));
                    rhs -= ai * ak * (b.q(pair(j, l)) - single(j) - single(l));
                    rhs += aj * ak * (b.q(pair(i, l)) - single(i) - single(l));
                    b.check("double-commutator-mixed",
                            tuple_context({i, j, k, l}), lhs, rhs);
                }
}

void check_dolan_grady(SuiteBuilder& b, int n) {
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (i == j || i == k || j == k) continue;
                const subset_t ij = subset_from_modes({i, j}, n);
                const subset_t jk = subset_from_modes({j, k}, n);
                const SparseOperator inner = commutator(b.q(ij), b.q(jk));
                const SparseOperator lhs =
                    commutator(b.q(ij), commutator(b.q(ij), inner));
                const double weight =
                    (b.a(i) + b.a(j)) * (b.a(i) + b.a(j));
                b.check("dolan-grady", tuple_context({i, j, k}), lhs,
                        weight * inner);
            }
}

} // namespace

std::vector<RelationReport> verify_relation_suite(const ModeParams& params,
                                                  double tol) {
    params.validate();
    SuiteBuilder builder(params, tol);
    const int n = params.n;

    if (n >= 3) {
        check_triple_union_sum(builder, n);
    } else {
        builder.skip("triple-union-sum", "requires n >= 3");
    }
    check_linear_dependence(builder, n);
    check_commuting_pairs(builder, n);
    if (n >= 3) {
        check_pair_sum_commutator(builder, n);
        check_cyclic_commutators(builder, n);
        check_double_commutator_closure(builder, n);
        check_dolan_grady(builder, n);
    } else {
        builder.skip("pair-sum-commutator", "requires n >= 3");
        builder.skip("cyclic-commutators", "requires n >= 3");
        builder.skip("double-commutator-closure", "requires n >= 3");
        builder.skip("dolan-grady", "requires n >= 3");
    }
    if (n >= 4) {
        check_four_index_sum(builder, n);
        check_double_commutator_mixed(builder, n);
    } else {
        builder.skip("four-index-commutator-sum", "requires n >= 4");
        builder.skip("double-commutator-mixed", "requires n >= 4");
    }
    return builder.take();
}

// ---------------------------------------------------------------------------
// sl triples

SlTriple sl_generators(const FockBasis& basis, const ModeParams& params,
                       const CouplingTree& tree, subset_t node) {
    const auto ctx = tree.context(node);
    const double aA = params.a_sum(ctx.A);
    const double aB = params.a_sum(ctx.B);
    const double aK = params.a_sum(ctx.K);
    const double aL = params.a_sum(ctx.L);
    const double aM = params.a_sum(ctx.M);

    const double radicand = 4.0 * aK * aL * aM * aA * aA * aB;
    if (!(radicand > 0.0))
        throw ConfigError("non-positive normalization radicand at node " +
                          subset_str(node));

    SlTriple triple;
    triple.node = node;
    triple.lambda = 1.0 / std::sqrt(radicand);

    const SparseOperator qA = casimir(basis, params, ctx.A);
    const SparseOperator qLM = casimir(basis, params, ctx.L | ctx.M);
    const SparseOperator inner = commutator(qA, qLM);
    const SparseOperator outer = commutator(qA, inner);

    triple.e = triple.lambda * (outer + aA * inner);
    triple.f = triple.lambda * (outer - aA * inner);
    triple.h = commutator(triple.e, triple.f);

    // Cross-check h against its closed form in the Casimirs.
    SparseOperator closed = (2.0 / aA) * qA;
    closed -= (1.0 / aB) * casimir(basis, params, ctx.B);
    closed -= (1.0 / aK) * casimir(basis, params, ctx.K);
    closed -= (1.0 / aL) * casimir(basis, params, ctx.L);
    closed += (1.0 / aM) * casimir(basis, params, ctx.M);
    const double residual = relative_residual(triple.h, closed);
    if (residual > 1e-8)
        throw Error("Cartan element at node " + subset_str(node) +
                    " deviates from its closed form; residual " +
                    std::to_string(residual));
    return triple;
}

SlTriple sl_generators(const ModeParams& params, const CouplingTree& tree,
                       subset_t node) {
    return sl_generators(FockBasis(params), params, tree, node);
}

std::vector<SlTriple> chain_triples(const FockBasis& basis,
                                    const ModeParams& params) {
    if (params.n < 3)
        throw ConfigError("chain triples need n >= 3");
    const CouplingTree chain = chain_tree(params.n);
    std::vector<SlTriple> triples;
    for (int k = 1; k <= params.n - 2; ++k)
        triples.push_back(
            sl_generators(basis, params, chain, subset_full(k + 1)));
    return triples;
}

std::vector<RelationReport> verify_serre(const std::vector<SlTriple>& triples,
                                         double tol) {
    const int m = static_cast<int>(triples.size());
    std::vector<RelationReport> reports;
    const auto check = [&](const std::string& id, const std::string& context,
                           const SparseOperator& lhs, const SparseOperator& rhs) {
        RelationReport report;
        report.id = id;
        report.context = context;
        report.residual = relative_residual(lhs, rhs);
        report.passed = report.residual <= tol;
        reports.push_back(std::move(report));
    };
    const auto cartan = [&](int i, int j) -> double {
        if (i == j) return 2.0;
        if (std::abs(i - j) == 1) return -1.0;
        return 0.0;
    };

    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j)
            check("cartan-commute", tuple_context({i + 1, j + 1}),
                  commutator(triples[i].h, triples[j].h),
                  SparseOperator(triples[i].h.dim()));
        for (int j = 0; j < m; ++j) {
            const SparseOperator ef = commutator(triples[i].e, triples[j].f);
            check("ef-pairing", tuple_context({i + 1, j + 1}), ef,
                  i == j ? triples[i].h : SparseOperator(ef.dim()));

            const double weight = cartan(i, j);
            check("cartan-weights", tuple_context({i + 1, j + 1}) + " e",
                  commutator(triples[i].h, triples[j].e),
                  weight * triples[j].e);
            check("cartan-weights", tuple_context({i + 1, j + 1}) + " f",
                  commutator(triples[i].h, triples[j].f),
                  (-weight) * triples[j].f);

            if (i == j) continue;
            // ad(e_i)^{1-A_ij}(e_j) = 0 and the f-side mirror.
            SparseOperator ad_e = triples[j].e;
            SparseOperator ad_f = triples[j].f;
            const int power = 1 - static_cast<int>(weight);
            for (int t = 0; t < power; ++t) {
                ad_e = commutator(triples[i].e, ad_e);
                ad_f = commutator(triples[i].f, ad_f);
            }
            check("serre-cubic", tuple_context({i + 1, j + 1}) + " e", ad_e,
                  SparseOperator(ad_e.dim()));
            check("serre-cubic", tuple_context({i + 1, j + 1}) + " f", ad_f,
                  SparseOperator(ad_f.dim()));
        }
    }
    return reports;
}

SparseOperator sl2_casimir(const FockBasis& basis, const ModeParams& params,
                           subset_t K, subset_t L, subset_t M) {
    if (K == 0 || L == 0 || M == 0)
        throw IndexError("sl2 Casimir needs three non-empty subsets");
    if ((K & L) || (K & M) || (L & M))
        throw IndexError("sl2 Casimir subsets overlap: " + subset_str(K) + " " +
                         subset_str(L) + " " + subset_str(M));
    const subset_t KLM = K | L | M;
    SparseOperator S = (1.0 / params.a_sum(K)) * casimir(basis, params, K);
    S += (1.0 / params.a_sum(L)) * casimir(basis, params, L);
    S += (1.0 / params.a_sum(M)) * casimir(basis, params, M);
    S -= (1.0 / params.a_sum(KLM)) * casimir(basis, params, KLM);
    return 0.5 * (S * S) - S;
}

SparseOperator sl2_casimir(const ModeParams& params, subset_t K, subset_t L,
                           subset_t M) {
    return sl2_casimir(FockBasis(params), params, K, L, M);
}

std::vector<SparseOperator> spanning_family(const FockBasis& basis,
                                            const ModeParams& params) {
    const int n = params.n;
    std::vector<SparseOperator> family;
    for (int i = 1; i <= n; ++i)
        family.push_back(casimir(basis, params, subset_singleton(i)));
    family.push_back(casimir(basis, params, subset_full(n)));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            family.push_back(
                casimir(basis, params, subset_from_modes({i, j}, n)));
    for (int j = 2; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k)
            family.push_back(commutator(
                casimir(basis, params, subset_from_modes({1, j}, n)),
                casimir(basis, params, subset_from_modes({j, k}, n))));
    return family;
}

Eigen::VectorXd family_singular_values(
    const std::vector<SparseOperator>& family) {
    if (family.empty()) return Eigen::VectorXd();
    const int dim = family.front().dim();
    Eigen::MatrixXd flat(dim * dim, static_cast<int>(family.size()));
    for (int c = 0; c < static_cast<int>(family.size()); ++c) {
        if (family[c].dim() != dim)
            throw DimensionMismatch("family members on different spaces");
        Eigen::MatrixXd dense = family[c].dense();
        flat.col(c) = Eigen::Map<Eigen::VectorXd>(dense.data(), dim * dim);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat);
    return svd.singularValues();
}

Eigen::VectorXd stacked_family_singular_values(
    int n, int level, const std::vector<std::vector<double>>& a_draws,
    const std::vector<double>& beta) {
    if (a_draws.empty()) throw ConfigError("need at least one charge draw");
    FockBasis basis(n, level);
    const int dim = basis.dim();
    const int count = n + 1 + n * (n - 1) / 2 + (n - 1) * (n - 2) / 2;
    Eigen::MatrixXd flat(dim * dim * static_cast<int>(a_draws.size()), count);
    for (int s = 0; s < static_cast<int>(a_draws.size()); ++s) {
        ModeParams params;
        params.n = n;
        params.level = level;
        params.a = a_draws[s];
        params.beta = beta;
        params.validate();
        const auto family = spanning_family(basis, params);
        if (static_cast<int>(family.size()) != count)
            throw Error("unexpected family size");
        for (int c = 0; c < count; ++c) {
            Eigen::MatrixXd dense = family[c].dense();
            flat.block(s * dim * dim, c, dim * dim, 1) =
                Eigen::Map<Eigen::VectorXd>(dense.data(), dim * dim);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat);
    return svd.singularValues();
}

} // namespace racah
