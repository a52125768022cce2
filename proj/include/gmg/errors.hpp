#pragma once

#include <stdexcept>
#include <string>

namespace gmg {

// Malformed or missing input data: unreadable files, bad GXL, bad native files.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inconsistent configuration, e.g. the exact solver asked to handle graphs above its order cap.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gmg
