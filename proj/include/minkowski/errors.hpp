#pragma once

#include <stdexcept>
#include <string>

namespace minkowski {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid profile parameters or a profile that fails structural checks.
class ProfileError : public Error {
public:
    using Error::Error;
};

// An argument outside the operation's domain, e.g. a zero direction vector.
class DomainError : public Error {
public:
    using Error::Error;
};

class NotRadonError : public Error {
public:
    NotRadonError(const std::string& what, double deviation)
        : Error(what), deviation_(deviation) {}
    [[nodiscard]] double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

class DegenerateCurveError : public Error {
public:
    using Error::Error;
};

class ParametrizationMismatch : public Error {
public:
    using Error::Error;
};

class ConvexityError : public Error {
public:
    using Error::Error;
};

class IntegrationBlowup : public Error {
public:
    using Error::Error;
};

class NoEigenfunctionError : public Error {
public:
    using Error::Error;
};

// Malformed textual input: profile specs, expressions, CSV files.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace minkowski
