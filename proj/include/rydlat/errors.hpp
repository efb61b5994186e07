#ifndef RYDLAT_ERRORS_HPP
#define RYDLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rydlat {

// Bad or out-of-domain input parameters (CLI exit code 2).
class ParamError : public std::invalid_argument {
public:
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical-domain failures: non-finite generators, lost convergence (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rydlat

#endif
