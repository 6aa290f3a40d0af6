#pragma once

#include <stdexcept>
#include <string>

namespace invlip {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid generator index, missing tabulated value, wrong backend kind.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// An enumeration exceeded its element or combinatorial budget.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

/// A stated precondition (e.g. |c(s) - u(s)| <= eta) does not hold.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// An exact-scope computation was requested where only ball truncation exists.
class ScopeError : public Error {
public:
    explicit ScopeError(const std::string& what) : Error(what) {}
};

/// Structural axioms of an input object failed validation.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Two points at pseudo-distance zero carry different values.
class UnboundedNormError : public Error {
public:
    explicit UnboundedNormError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Raised when a user-supplied metric oracle fails.
class OracleError : public Error {
public:
    explicit OracleError(const std::string& what) : Error(what) {}
};

}  // namespace invlip
