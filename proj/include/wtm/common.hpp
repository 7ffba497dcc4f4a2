#pragma once

#include <stdexcept>
#include <string>

namespace wtm {

// Bad or inconsistent caller input (rejected preconditions).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Broken configuration (unknown wavelet name, malformed rules file, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unusable input data (unreadable file, too many malformed records, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wtm
