#pragma once

#include <stdexcept>
#include <string>

namespace mixlearn {

// Every failure the library reports derives from Error. The CLI maps any
// Error to exit code 1; argument problems are handled separately.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the family's support or parameter domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Caller violated an operation's precondition (wrong family, bad shape).
class ContractError : public Error {
public:
    using Error::Error;
};

class FamilyMismatchError : public ContractError {
public:
    using ContractError::ContractError;
};

// A moment polynomial lost its leading term (e.g. binomial with n < order).
class DegeneracyError : public Error {
public:
    using Error::Error;
};

// Moments or probabilities do not correspond to any integer power-sum vector.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

class ReconstructionError : public Error {
public:
    using Error::Error;
};

class AmbiguityError : public ReconstructionError {
public:
    using ReconstructionError::ReconstructionError;
};

class CapExceededError : public Error {
public:
    using Error::Error;
};

class CertificateUnavailableError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace mixlearn
