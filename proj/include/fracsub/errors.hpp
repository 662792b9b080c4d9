#pragma once

#include <stdexcept>
#include <string>

namespace fracsub {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Adaptive integration did not reach its tolerance.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical inverse Laplace transform failed (transform threw or returned a non-finite value).
class InversionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two routes that must agree did not, or a quantity left its admissible range.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested asymptotic regime or prediction case is not covered by the kernel family.
class UnsupportedCase : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fracsub
