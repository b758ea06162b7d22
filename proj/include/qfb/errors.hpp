#pragma once

#include <stdexcept>
#include <string>

namespace qfb {

/// A parameter is outside its mathematical domain (eta, |q|, r_alpha, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A matrix that must be a density operator is not one (within tolerance).
class InvalidStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The iterative eigensolver ran out of iterations.
class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input does not have the X sparsity pattern required by the closed form.
class NotXStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qfb
