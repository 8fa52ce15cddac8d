#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace conecal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or non-finite input (bad sizes, NaN entries, out-of-range arguments).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// An iterative method ran out of iterations.  Carries the best residual seen.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A root bracket does not enclose a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Adaptive step size underflowed; the last accepted state is attached.
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double x, std::vector<double> y)
        : Error(what), x_(x), y_(std::move(y)) {}
    double last_x() const noexcept { return x_; }
    const std::vector<double>& last_state() const noexcept { return y_; }

private:
    double x_;
    std::vector<double> y_;
};

/// A documented operation precondition was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A constructive constraint (closeness band, containment) cannot be met.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Query outside the region where a field or table is defined.
class OutOfDomainError : public Error {
public:
    using Error::Error;
};

/// A trajectory integration left its admissible region.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace conecal
