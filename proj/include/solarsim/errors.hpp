#ifndef SOLARSIM_ERRORS_HPP
#define SOLARSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace solarsim {

/// Base class for all library errors.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The implicit-equation solver did not reach the residual tolerance.
class NoConvergence : public SimError {
public:
    explicit NoConvergence(const std::string& msg) : SimError(msg) {}
};

/// An argument is outside the mathematical domain of the operation.
class DomainError : public SimError {
public:
    explicit DomainError(const std::string& msg) : SimError(msg) {}
};

/// A converter target that the selected topology cannot produce.
class Unachievable : public SimError {
public:
    explicit Unachievable(const std::string& msg) : SimError(msg) {}
};

/// Input outside the calibrated range of a lookup/mapping.
class OutOfRange : public SimError {
public:
    explicit OutOfRange(const std::string& msg) : SimError(msg) {}
};

/// An operation that needs at least one curve point received none.
class EmptyCurve : public SimError {
public:
    explicit EmptyCurve(const std::string& msg) : SimError(msg) {}
};

/// Configuration file problem; message carries the offending key path.
class ConfigError : public SimError {
public:
    explicit ConfigError(const std::string& msg) : SimError(msg) {}
};

} // namespace solarsim

#endif
