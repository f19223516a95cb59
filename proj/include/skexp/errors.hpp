#ifndef SKEXP_ERRORS_HPP
#define SKEXP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skexp {

// Expression text could not be parsed (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t column)
        : std::runtime_error(msg), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// Domain violations: evaluating at a pole, an expansion order too small for
// the requested monomial, oversized enumerations, underdetermined fits.
// All map to CLI exit code 3.
class DomainError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PoleError : public DomainError {
    using DomainError::DomainError;
};

class BudgetError : public DomainError {
    using DomainError::DomainError;
};

class GuardError : public DomainError {
    using DomainError::DomainError;
};

class RankError : public DomainError {
    using DomainError::DomainError;
};

// Broken internal assumptions, e.g. a regenerated self-term whose coefficient
// is not exactly beta^2 times the input's (CLI exit code 4).
class InternalError : public std::logic_error {
    using std::logic_error::logic_error;
};

class SelfTermError : public InternalError {
    using InternalError::InternalError;
};

} // namespace skexp

#endif
