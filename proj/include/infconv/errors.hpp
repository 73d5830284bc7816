#pragma once

#include <stdexcept>
#include <string>

namespace infconv {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class GridTooLarge : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateFunction : public Error {
public:
    using Error::Error;
};

class InvalidValue : public Error {
public:
    using Error::Error;
};

class EmptyFold : public Error {
public:
    using Error::Error;
};

class OracleTooLarge : public Error {
public:
    using Error::Error;
};

class NotConvex : public Error {
public:
    using Error::Error;
};

class IdentityNotApplicable : public Error {
public:
    using Error::Error;
};

class IndeterminateGeneratingValue : public Error {
public:
    using Error::Error;
};

class InvalidGeneratingFunction : public Error {
public:
    using Error::Error;
};

class EmptyDomain : public Error {
public:
    using Error::Error;
};

class NotAFactorization : public Error {
public:
    using Error::Error;
};

class OutsideSupremumDomain : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace infconv
