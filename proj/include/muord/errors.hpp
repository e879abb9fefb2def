#pragma once

#include <stdexcept>
#include <string>

namespace muord {

// Mismatched ring parameters, bad shapes, malformed input files.
struct parameter_error : std::runtime_error {
    explicit parameter_error(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested quantity is not determined at the working p-adic precision.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input violates a structural requirement (not a BT-module, claimed
// p-divisibility fails, ...).  Distinct from precision loss: the data itself
// is bad.
struct invalid_module_error : std::runtime_error {
    explicit invalid_module_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a hard complexity guard (e.g. Witt length for the
// structure-polynomial generator).
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace muord
