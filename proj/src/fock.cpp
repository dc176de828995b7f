#include "racah/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "racah/errors.hpp"
#include "racah/rational.hpp"

namespace racah {

// ---------------------------------------------------------------------------
// subset helpers (declared in subset.hpp)

std::vector<int> subset_modes(subset_t s) {
    std::vector<int> modes;
    for (int k = 1; s != 0; ++k, s >>= 1) {
        if (s & 1u) modes.push_back(k);
    }
    return modes;
}

subset_t subset_from_modes(const std::vector<int>& modes, int n) {
    subset_t s = 0;
    for (int k : modes) {
        if (k < 1 || k > n) {
            std::ostringstream msg;
            msg << "mode " << k << " outside 1.." << n;
            throw IndexError(msg.str());
        }
        s |= subset_singleton(k);
    }
    return s;
}

std::string subset_str(subset_t s) {
    std::string out = "{";
    bool first = true;
    for (int k : subset_modes(s)) {
        if (!first) out += ",";
        out += std::to_string(k);
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// rational parsing (declared in rational.hpp)

double parse_rational(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            t.end());
    if (t.empty()) throw ParseError("empty numeric literal");

    auto slash = t.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t pos_num = 0, pos_den = 0;
            const std::string num = t.substr(0, slash);
            const std::string den = t.substr(slash + 1);
            const long long p = std::stoll(num, &pos_num);
            const long long q = std::stoll(den, &pos_den);
            if (pos_num != num.size() || pos_den != den.size())
                throw ParseError("malformed ratio literal: " + text);
            if (q == 0) throw ParseError("zero denominator in: " + text);
            return static_cast<double>(p) / static_cast<double>(q);
        }
        std::size_t pos = 0;
        const double value = std::stod(t, &pos);
        if (pos != t.size()) throw ParseError("malformed numeric literal: " + text);
        return value;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed numeric literal: " + text);
    } catch (const std::out_of_range&) {
        throw ParseError("numeric literal out of range: " + text);
    }
}

std::vector<double> parse_rational_list(const std::string& text) {
    std::vector<double> values;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) values.push_back(parse_rational(item));
    if (values.empty()) throw ParseError("empty numeric list");
    return values;
}

// ---------------------------------------------------------------------------
// ModeParams

ModeParams ModeParams::defaults(int n, int level) {
    ModeParams params;
    params.n = n;
    params.level = level;
    params.beta.assign(std::max(n, 0), 1.0);
    // a_i = i-th odd prime
    int found = 0;
    for (int candidate = 3; found < n; candidate += 2) {
        bool prime = true;
        for (int d = 3; d * d <= candidate; d += 2) {
            if (candidate % d == 0) { prime = false; break; }
        }
        if (prime) {
            params.a.push_back(static_cast<double>(candidate));
            ++found;
        }
    }
    params.validate();
    return params;
}

void ModeParams::validate() const {
    if (n < 1) throw ConfigError("mode count must be at least 1");
    if (level < 0) throw ConfigError("level must be non-negative");
    if (static_cast<int>(a.size()) != n)
        throw ConfigError("expected " + std::to_string(n) + " charges a_i");
    if (static_cast<int>(beta.size()) != n)
        throw ConfigError("expected " + std::to_string(n) + " shifts beta_i");
    for (double ai : a)
        if (!(ai > 0.0)) throw ConfigError("all a_i must be positive");
    for (double bi : beta)
        if (!(bi > 0.0)) throw ConfigError("all beta_i must be positive");
}

double ModeParams::a_sum(subset_t K) const {
    double total = 0.0;
    for (int k : subset_modes(K)) {
        if (k > n) throw IndexError("subset reaches past mode count");
        total += a[k - 1];
    }
    return total;
}

double ModeParams::beta_sum(subset_t K) const {
    double total = 0.0;
    for (int k : subset_modes(K)) {
        if (k > n) throw IndexError("subset reaches past mode count");
        total += beta[k - 1];
    }
    return total;
}

// ---------------------------------------------------------------------------
// FockBasis

namespace {

// Fill states in colexicographic order: the last coordinate is the most
// significant one, so it is fixed first and ascends slowest.
void colex_fill(int len, int total, MultiIndex& buffer,
                std::vector<MultiIndex>& out) {
    if (len == 1) {
        buffer[0] = total;
        out.push_back(buffer);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        buffer[len - 1] = v;
        colex_fill(len - 1, total - v, buffer, out);
    }
}

} // namespace

FockBasis::FockBasis(int n, int level) : m_n(n), m_level(level) {
    if (n < 1) throw ConfigError("mode count must be at least 1");
    if (level < 0) throw ConfigError("level must be non-negative");
    MultiIndex buffer(n, 0);
    colex_fill(n, level, buffer, m_states);
    for (int i = 0; i < static_cast<int>(m_states.size()); ++i)
        m_lookup.emplace(m_states[i], i);
}

FockBasis::FockBasis(const ModeParams& params) : FockBasis(params.n, params.level) {
    params.validate();
}

const MultiIndex& FockBasis::state(int idx) const {
    if (idx < 0 || idx >= dim()) throw IndexError("basis index out of range");
    return m_states[idx];
}

int FockBasis::index(const MultiIndex& m) const {
    auto it = m_lookup.find(m);
    if (it == m_lookup.end()) throw IndexError("occupation vector not in basis");
    return it->second;
}

long long FockBasis::dimension(int n, int level) {
    // binomial(level + n - 1, n - 1)
    long long result = 1;
    for (int i = 1; i <= n - 1; ++i) {
        result = result * (level + i) / i;
    }
    return result;
}

FockBasis enumerate_basis(const ModeParams& params) { return FockBasis(params); }

// ---------------------------------------------------------------------------
// SparseOperator

SparseOperator::SparseOperator(int dim) : m_dim(dim) {
    if (dim < 0) throw DimensionMismatch("negative operator dimension");
}

SparseOperator SparseOperator::identity(int dim) {
    SparseOperator op(dim);
    for (int i = 0; i < dim; ++i) op.add(i, i, 1.0);
    return op;
}

void SparseOperator::add(int row, int col, double value) {
    if (row < 0 || row >= m_dim || col < 0 || col >= m_dim)
        throw IndexError("operator entry outside dimension stamp");
    auto key = std::make_pair(row, col);
    auto [it, inserted] = m_entries.emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0.0) m_entries.erase(it);
    } else if (value == 0.0) {
        m_entries.erase(it);
    }
}

double SparseOperator::entry(int row, int col) const {
    auto it = m_entries.find({row, col});
    return it == m_entries.end() ? 0.0 : it->second;
}

void SparseOperator::check_same_dim(const SparseOperator& other) const {
    if (m_dim != other.m_dim)
        throw DimensionMismatch("operators live on different spaces: " +
                                std::to_string(m_dim) + " vs " +
                                std::to_string(other.m_dim));
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
    check_same_dim(other);
    for (const auto& [key, value] : other.m_entries)
        add(key.first, key.second, value);
    return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& other) {
    check_same_dim(other);
    for (const auto& [key, value] : other.m_entries)
        add(key.first, key.second, -value);
    return *this;
}

SparseOperator& SparseOperator::operator*=(double scale) {
    if (scale == 0.0) {
        m_entries.clear();
        return *this;
    }
    for (auto& [key, value] : m_entries) value *= scale;
    return *this;
}

SparseOperator SparseOperator::transpose() const {
    SparseOperator result(m_dim);
    for (const auto& [key, value] : m_entries)
        result.add(key.second, key.first, value);
    return result;
}

double SparseOperator::norm() const {
    double sum = 0.0;
    for (const auto& [key, value] : m_entries) sum += value * value;
    return std::sqrt(sum);
}

Eigen::MatrixXd SparseOperator::dense() const {
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m_dim, m_dim);
    for (const auto& [key, value] : m_entries) mat(key.first, key.second) = value;
    return mat;
}

void SparseOperator::prune(double threshold) {
    for (auto it = m_entries.begin(); it != m_entries.end();) {
        if (std::abs(it->second) <= threshold)
            it = m_entries.erase(it);
        else
            ++it;
    }
}

bool SparseOperator::same_entries(const SparseOperator& other) const {
    return m_dim == other.m_dim && m_entries == other.m_entries;
}

SparseOperator operator+(SparseOperator lhs, const SparseOperator& rhs) {
    lhs += rhs;
    return lhs;
}

SparseOperator operator-(SparseOperator lhs, const SparseOperator& rhs) {
    lhs -= rhs;
    return lhs;
}

SparseOperator operator*(double scale, SparseOperator op) {
    op *= scale;
    return op;
}

SparseOperator operator*(const SparseOperator& lhs, const SparseOperator& rhs) {
    if (lhs.dim() != rhs.dim())
        throw DimensionMismatch("product of operators on different spaces");
    SparseOperator result(lhs.dim());
    const auto& rhs_entries = rhs.entries();
    for (const auto& [lkey, lvalue] : lhs.entries()) {
        const int mid = lkey.second;
        auto it = rhs_entries.lower_bound({mid, 0});
        const auto end = rhs_entries.lower_bound({mid + 1, 0});
        for (; it != end; ++it)
            result.add(lkey.first, it->first.second, lvalue * it->second);
    }
    return result;
}

double relative_residual(const SparseOperator& lhs, const SparseOperator& rhs) {
    SparseOperator diff = lhs;
    diff -= rhs;
    return diff.norm() / (1.0 + lhs.norm() + rhs.norm());
}

// ---------------------------------------------------------------------------
// operator constructors

namespace {

void check_mode(const ModeParams& params, int k) {
    if (k < 1 || k > params.n)
        throw IndexError("mode " + std::to_string(k) + " outside 1.." +
                         std::to_string(params.n));
}

void check_compatible(const FockBasis& basis, const ModeParams& params) {
    if (basis.n() != params.n || basis.level() != params.level)
        throw DimensionMismatch("basis does not match parameters");
}

/* Off-diagonal hopping amplitude between m and m + e_i - e_j. The two factor
 * products are each formed the same way for (i,j) and (j,i), so transposed
 * entries come out bit-identical and assembled Casimirs are exactly
 * symmetric. */
double hopping_amplitude(const ModeParams& params, const MultiIndex& m, int i,
                         int j) {
    const double charge = params.a[i - 1] * params.a[j - 1];
    const double occupation = static_cast<double>(
        static_cast<long long>(m[i - 1] + 1) * static_cast<long long>(m[j - 1]));
    return std::sqrt(charge) * std::sqrt(occupation);
}

} // namespace

SparseOperator number_operator(const FockBasis& basis, const ModeParams& params,
                               int k) {
    check_compatible(basis, params);
    check_mode(params, k);
    SparseOperator op(basis.dim());
    for (int idx = 0; idx < basis.dim(); ++idx)
        op.add(idx, idx, basis.state(idx)[k - 1] + params.beta[k - 1]);
    return op;
}

SparseOperator hopping_operator(const FockBasis& basis, const ModeParams& params,
                                int i, int j) {
    check_compatible(basis, params);
    check_mode(params, i);
    check_mode(params, j);
    SparseOperator op(basis.dim());
    if (i == j) {
        for (int idx = 0; idx < basis.dim(); ++idx)
            op.add(idx, idx, params.a[i - 1] * basis.state(idx)[i - 1]);
        return op;
    }
    for (int idx = 0; idx < basis.dim(); ++idx) {
        const MultiIndex& m = basis.state(idx);
        if (m[j - 1] == 0) continue;
        MultiIndex target = m;
        ++target[i - 1];
        --target[j - 1];
        op.add(basis.index(target), idx, hopping_amplitude(params, m, i, j));
    }
    return op;
}

SparseOperator casimir(const FockBasis& basis, const ModeParams& params,
                       subset_t K) {
    check_compatible(basis, params);
    if (K == 0) throw IndexError("Casimir of the empty subset");
    const std::vector<int> modes = subset_modes(K);
    if (modes.back() > params.n) throw IndexError("subset reaches past mode count");

    const double aK = params.a_sum(K);
    SparseOperator op(basis.dim());

    // Diagonal: a_K * sum_i (m_i + beta_i) minus the i == j bilinears a_i m_i.
    for (int idx = 0; idx < basis.dim(); ++idx) {
        const MultiIndex& m = basis.state(idx);
        double value = 0.0;
        for (int k : modes) {
            value += aK * (m[k - 1] + params.beta[k - 1]);
            value -= params.a[k - 1] * m[k - 1];
        }
        op.add(idx, idx, value);
    }

    // Off-diagonal: -A_{+,i} A_{-,j} for i != j. Each matrix entry receives a
    // contribution from exactly one ordered pair (the state difference pins i
    // and j), and the amplitude is formed symmetrically in (i, j), so the
    // assembled matrix is symmetric entry-for-entry.
    for (int i : modes) {
        for (int j : modes) {
            if (i == j) continue;
            for (int idx = 0; idx < basis.dim(); ++idx) {
                const MultiIndex& m = basis.state(idx);
                if (m[j - 1] == 0) continue;
                MultiIndex target = m;
                ++target[i - 1];
                --target[j - 1];
                op.add(basis.index(target), idx,
                       -hopping_amplitude(params, m, i, j));
            }
        }
    }
    return op;
}

SparseOperator number_operator(const ModeParams& params, int k) {
    return number_operator(FockBasis(params), params, k);
}

SparseOperator hopping_operator(const ModeParams& params, int i, int j) {
    return hopping_operator(FockBasis(params), params, i, j);
}

SparseOperator casimir(const ModeParams& params, subset_t K) {
    return casimir(FockBasis(params), params, K);
}

} // namespace racah
