#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad shapes, out-of-range indices, violated preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A matrix that had to be inverted at frequency `omega` is numerically singular.
class SingularMatrix : public Error {
public:
    SingularMatrix(const std::string& what, double omega)
        : Error(what), omega_(omega) {}

    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

/// A simulated trajectory left the representable range.
class NumericOverflow : public Error {
public:
    NumericOverflow(const std::string& what, std::size_t step)
        : Error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// A ratio whose denominator vanished (e.g. R^2 on an all-zero record).
class UndefinedRatio : public Error {
public:
    using Error::Error;
};

/// Unparseable input file. `location` names the line or JSON field.
class DataFormat : public Error {
public:
    DataFormat(const std::string& what, std::string location)
        : Error(what + " (at " + location + ")"), location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// Non-fatal diagnostics (unstable networks, ill-conditioned fits) go through
/// this hook. The default handler writes to stderr. Installing a handler
/// returns the previous one; an empty handler silences warnings.
using WarningHandler = std::function<void(std::string_view)>;

WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace latnet
