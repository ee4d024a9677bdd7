#pragma once

#include <stdexcept>
#include <string>

namespace lzlab {

// Bad arguments to a mathematical routine (outside its domain).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid run configuration or CLI input. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical consistency check failed (census, residual, quadrature,
// root number, branch tracking). Maps to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lzlab
