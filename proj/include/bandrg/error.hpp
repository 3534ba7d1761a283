#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bandrg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or violated preconditions (index out of range, bad cutoff, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Numerical failure: tiny pivots, non-convergence, non-finite values.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Elimination denominator fell below the pivot floor.
class PivotError : public NumericalError {
public:
    PivotError(std::size_t index, double pivot, std::size_t step);

    std::size_t index() const noexcept { return index_; }
    double pivot() const noexcept { return pivot_; }
    /// Number of eliminations already completed when the failure occurred.
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t index_;
    double pivot_;
    std::size_t step_;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// RG and PC matrices differ outside the highest-index corner.
class LocalityError : public Error {
public:
    using Error::Error;
};

} // namespace bandrg
