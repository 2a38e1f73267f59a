#pragma once

#include <stdexcept>
#include <string>

namespace nse {

/// Broad failure classes. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
    Validation,    ///< malformed game, profile, or file contents
    Precondition,  ///< input is well formed but outside an algorithm's domain
    Solver,        ///< LP failure or an internal invariant broke
    Refusal,       ///< request exceeds a configured size cap
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};

class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(ErrorKind::Solver, what) {}
};

class RefusalError : public Error {
public:
    explicit RefusalError(const std::string& what) : Error(ErrorKind::Refusal, what) {}
};

} // namespace nse
