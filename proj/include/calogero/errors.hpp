#pragma once

#include <stdexcept>
#include <string>

namespace calogero {

enum class ErrorKind {
    domain,
    accuracy_loss,
    range,
    no_real_exponent,
    nonsingularity_violation,
    singular_configuration,
    resource_limit,
    internal_consistency,
    numerical_failure,
    degenerate_envelope,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

/// Raised when an evaluation cannot reach its accuracy target; carries the estimate it did reach.
struct AccuracyLoss : Error {
    AccuracyLoss(const std::string& what, double achieved)
        : Error(ErrorKind::accuracy_loss, what + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_error(achieved) {}
    double achieved_error;
};

struct RangeError : Error {
    explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

struct NoRealExponent : Error {
    explicit NoRealExponent(const std::string& what) : Error(ErrorKind::no_real_exponent, what) {}
};

struct NonsingularityViolation : Error {
    explicit NonsingularityViolation(const std::string& what)
        : Error(ErrorKind::nonsingularity_violation, what) {}
};

struct SingularConfiguration : Error {
    explicit SingularConfiguration(const std::string& what)
        : Error(ErrorKind::singular_configuration, what) {}
};

struct ResourceLimit : Error {
    explicit ResourceLimit(const std::string& what) : Error(ErrorKind::resource_limit, what) {}
};

struct InternalConsistency : Error {
    explicit InternalConsistency(const std::string& what)
        : Error(ErrorKind::internal_consistency, what) {}
};

struct NumericalFailure : Error {
    explicit NumericalFailure(const std::string& what) : Error(ErrorKind::numerical_failure, what) {}
};

struct DegenerateEnvelope : Error {
    explicit DegenerateEnvelope(const std::string& what)
        : Error(ErrorKind::degenerate_envelope, what) {}
};

} // namespace calogero
