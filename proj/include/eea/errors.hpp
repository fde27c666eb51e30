#pragma once

#include <stdexcept>
#include <string>

namespace eea {

/// Argument outside the mathematical domain of an operation (σ ≤ 0, C ≤ 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An objective or integrand returned a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, double abscissa)
        : std::runtime_error(what), abscissa_(abscissa) {}

    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

/// Adaptive quadrature ran out of subdivisions before reaching the requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

class InfeasiblePointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inputs that are individually valid but contradict each other
/// (a point that is not on the claimed fitness shell, a placement for the wrong C).
class InconsistentStateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class UnsupportedProblemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A fitted decay base fell outside (0, 1).
class DecayFitError : public std::range_error {
public:
    DecayFitError(const std::string& what, double base)
        : std::range_error(what), base_(base) {}

    double base() const noexcept { return base_; }

private:
    double base_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace eea
