#pragma once

#include <stdexcept>
#include <string>

namespace ckg {

/// Base class for all solver errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector length does not match the grid it is used with.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Invalid physical or numerical parameter (|c| >= 1, odd M, bad amplitudes, ...).
class ParamError : public Error {
public:
    using Error::Error;
};

/// Problem in a run configuration document. Carries the offending key and,
/// when known, the 1-based line number in the source document.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, std::string key = {}, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          key_(std::move(key)),
          line_(line) {}

    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

/// A field exceeded the blow-up limit or went non-finite during a run.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& msg, long step)
        : Error(msg + " (step " + std::to_string(step) + ")"), step_(step) {}

    long step() const { return step_; }

private:
    long step_;
};

/// sin(lambda_l * tau) is too close to zero for some mode: the centered
/// time-derivative recovery degenerates. Pick a different time step.
class ResonanceError : public Error {
public:
    ResonanceError(const std::string& msg, int mode)
        : Error(msg), mode_(mode) {}

    int mode() const { return mode_; }

private:
    int mode_;
};

} // namespace ckg
