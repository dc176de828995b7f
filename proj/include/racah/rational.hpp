#ifndef RACAH_RATIONAL_HPP
#define RACAH_RATIONAL_HPP

#include <string>
#include <vector>

namespace racah {

/* Parse a scalar given either as an integer-ratio literal "p/q" or as a
 * plain decimal ("3", "-7/2", "0.25"). Ratios are converted with a single
 * floating division so "1/3" is the correctly rounded double. Throws
 * ParseError on malformed input or zero denominator. */
double parse_rational(const std::string& text);

/* Parse a comma-separated list of rationals, e.g. "2,3,5" or "1/2,1/2". */
std::vector<double> parse_rational_list(const std::string& text);

} // namespace racah

#endif
