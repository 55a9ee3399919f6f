#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tailsim {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parameter violates an invariant. `field()` names the offending key.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class StepSizeError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class DegenerateThrustError : public Error {
public:
    using Error::Error;
};

class EmptyTraceError : public Error {
public:
    using Error::Error;
};

/// Non-finite value detected during a closed-loop run.
class SimulationFault : public Error {
public:
    SimulationFault(std::int64_t tick, const std::string& what)
        : Error("simulation fault at tick " + std::to_string(tick) + ": " + what), tick_(tick) {}
    std::int64_t tick() const noexcept { return tick_; }

private:
    std::int64_t tick_;
};

}  // namespace tailsim
