#pragma once

#include <stdexcept>
#include <string>

namespace oilcurb {

/// An input value or configuration violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to converge or lost its bracket.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem or stream failure.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oilcurb
