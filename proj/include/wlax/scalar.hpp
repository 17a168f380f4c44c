#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wlax {

// Exact rationals throughout; mpq_class keeps values in lowest terms with a
// positive denominator.
using Scalar = mpq_class;

// Raised when an input violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a computation cannot proceed (non-invertible leading form,
// exhausted truncation budget, degree cap, ...).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_string(const Scalar& s);
Scalar parse_scalar(std::string_view text);

// Generalised binomial coefficient C(n, k) for any integer n and k >= 0.
Scalar binomial(long n, long k);

} // namespace wlax
