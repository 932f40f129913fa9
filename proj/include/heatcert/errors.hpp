#pragma once

#include <stdexcept>
#include <string>

namespace heatcert {

/// Input outside an operation's domain (t past a blow-up time, R beyond the
/// growth-estimator radius, a Kaplan datum with Q0 <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its target (quadrature tolerance,
/// integrator exit, bisection bracket).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked mathematical property failed (tube invariance, Banach-algebra
/// inequality). Signals an estimator bug rather than bad input.
class PropertyViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace heatcert
