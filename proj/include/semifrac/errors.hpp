#pragma once

#include <stdexcept>
#include <string>

namespace semifrac {

/// Invalid parameters or malformed input (maps to CLI exit code 2).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical method did not reach its target (maps to CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double estimate, double error)
        : NumericalError(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

} // namespace semifrac
