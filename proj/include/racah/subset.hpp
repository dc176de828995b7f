#ifndef RACAH_SUBSET_HPP
#define RACAH_SUBSET_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace racah {

/* A subset of the mode set {1, ..., n}, stored as a bitmask: bit k-1 set
 * means mode k belongs to the subset. n is capped well below 32 everywhere
 * this library is used, so 32 bits suffice. */
using subset_t = std::uint32_t;

inline int subset_size(subset_t s) { return __builtin_popcount(s); }

inline bool subset_contains(subset_t s, int mode) {
    return (s >> (mode - 1)) & 1u;
}

inline subset_t subset_full(int n) { return (n >= 32) ? ~0u : ((1u << n) - 1u); }

inline subset_t subset_singleton(int mode) { return 1u << (mode - 1); }

inline bool subsets_disjoint(subset_t a, subset_t b) { return (a & b) == 0; }

/* Nested-or-disjoint test: the condition under which the matching Casimirs
 * commute. */
inline bool subsets_nested_or_disjoint(subset_t a, subset_t b) {
    subset_t c = a & b;
    return c == 0 || c == a || c == b;
}

/* Lowest mode contained in s (1-based); s must be non-empty. */
inline int subset_min_mode(subset_t s) { return __builtin_ctz(s) + 1; }

std::vector<int> subset_modes(subset_t s);           // ascending, 1-based
subset_t subset_from_modes(const std::vector<int>& modes, int n);

/* Render as "{1,3,4}". */
std::string subset_str(subset_t s);

} // namespace racah

#endif
