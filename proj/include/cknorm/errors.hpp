#pragma once

#include <stdexcept>
#include <string>

namespace cknorm {

/// Bad user-supplied data: parse errors, out-of-space points, malformed
/// sequences, size limits.  CLI maps these to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric routine could not reach its tolerance (quadrature, root
/// finding).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A state the math says is unreachable.  Thrown instead of assert() so
/// fuzz suites can report it as a failure with a reproduction.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace cknorm
