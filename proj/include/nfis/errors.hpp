#pragma once

#include <stdexcept>
#include <string>

namespace nfis {

/// Invalid configuration or arguments: bad hyperparameters, malformed config
/// files, unknown keys. CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Problems with input data: missing files, malformed CSV cells, series too
/// short, constant targets. CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric breakdown during training or evaluation (non-finite updates,
/// zero denominators). CLI exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nfis
