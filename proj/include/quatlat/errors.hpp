#pragma once

#include <stdexcept>
#include <string>

namespace quatlat {

// Error taxonomy shared by the library and the CLI exit-code contract:
// usage errors exit 2, verified mismatches exit 1, everything else exits 3.

struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// The input object does not have the structure an operation requires
// (e.g. a reduction that is not of quaternion-order shape).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// A valuation or congruence could not be resolved at the working precision;
// recompute with a larger k.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration exceeded its configured budget.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A consistency check that should be unreachable failed (fixture corrupt,
// modeling bug).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace quatlat
