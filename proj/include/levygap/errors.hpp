#pragma once

#include <stdexcept>
#include <string>

namespace levygap {

/// Quadrature or series did not converge within its budget. Carries the
/// best partial value so callers can decide whether it is still usable.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial)
        : std::runtime_error(what), partial_(partial) {}
    double partial_value() const noexcept { return partial_; }

private:
    double partial_;
};

/// mu(R) (or a tail of it) is not finite where an operation requires it.
class InfiniteMassError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Symbol family has no sampling scheme (Tabulated symbols).
class UnsupportedFamilyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration (bad schema, unknown keys, missing params).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Observable mean is below the noise floor everywhere; no rate can be fitted.
class NoSignalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A report file does not carry the expected schema tag or required fields.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace levygap
