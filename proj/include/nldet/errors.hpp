#pragma once

#include <stdexcept>
#include <string>

namespace nldet {

/// Invalid user-supplied parameter. `field()` names the offending input.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An integrand produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(double abscissa, const std::string& what)
        : std::runtime_error(what), abscissa_(abscissa) {}

    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

/// Raised when a ratio would divide by a value indistinguishable from zero.
class DivisionGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nldet
