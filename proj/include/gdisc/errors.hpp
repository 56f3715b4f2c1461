#pragma once

#include <stdexcept>
#include <string>

namespace gdisc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix shape is wrong (odd size, non-square, mode count mismatch).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be positive definite is not.
class NotPositiveDefinite : public Error {
public:
    NotPositiveDefinite(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// A precondition on the pair of states fails, typically V_sigma - V_rho > 0.
/// Carries the offending quantity (e.g. the smallest eigenvalue).
class DomainError : public Error {
public:
    DomainError(const std::string& what, double offending_value)
        : Error(what), offending_value_(offending_value) {}
    double offending_value() const { return offending_value_; }

private:
    double offending_value_;
};

/// A measurement seed that is not a valid covariance matrix.
class InvalidSeed : public Error {
public:
    using Error::Error;
};

/// A covariance matrix that violates the bona fide condition.
class InvalidState : public Error {
public:
    using Error::Error;
};

/// Fock truncation lost more probability than allowed.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double deficit) : Error(what), deficit_(deficit) {}
    double deficit() const { return deficit_; }

private:
    double deficit_;
};

}  // namespace gdisc

namespace gdisc {

/// Malformed input file or command-line value.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace gdisc
