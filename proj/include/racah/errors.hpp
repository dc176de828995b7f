#ifndef RACAH_ERRORS_HPP
#define RACAH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace racah {

/* Base class for every error thrown by this library. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/* Operator/vector dimensions disagree. */
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/* A mode index, subset, or sector index is out of range or malformed. */
class IndexError : public Error {
public:
    explicit IndexError(const std::string& what) : Error(what) {}
};

/* An eigenvalue ladder that must be simple has a repeated value. */
class DegenerateSpectrum : public Error {
public:
    explicit DegenerateSpectrum(const std::string& what) : Error(what) {}
};

/* Operators expected to commute fail to within tolerance. */
class NonCommuting : public Error {
public:
    explicit NonCommuting(const std::string& what) : Error(what) {}
};

/* Malformed textual input (tree grammar, rational literal, CLI value). */
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/* Invalid run configuration (bad flag combination, missing argument). */
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace racah

#endif
