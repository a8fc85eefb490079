#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace plasmaskin {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

// Input outside the mathematical domain of an operation (non-positive
// parameters, Im w <= 0 for the dispersion integral, k = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Violated caller contract that is not a numeric domain issue
// (empty record lists, malformed ranges, boundary peaks).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double worst_location)
        : std::runtime_error(what), worst_location_(worst_location) {}

    /// Abscissa of the panel carrying the largest error when the
    /// integrator gave up.
    double worst_location() const noexcept { return worst_location_; }

private:
    double worst_location_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace plasmaskin
