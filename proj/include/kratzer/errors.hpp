#pragma once

#include <stdexcept>
#include <string>

namespace kratzer {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (CSV rows, numbers that fail to parse).
struct parse_error : error {
    using error::error;
};

/// Unknown or unsupported unit tag.
struct unit_error : error {
    using error::error;
};

/// Input outside the mathematical domain of an operation.
struct domain_error : error {
    using error::error;
};

/// Overflow, non-finite intermediate, or non-converged numerical method.
struct numeric_error : error {
    using error::error;
};

/// Caller broke an API contract (mismatched grids, bad flag combination).
struct usage_error : error {
    using error::error;
};

/// A quantity exceeded the representable range of the implementation.
struct range_error : error {
    using error::error;
};

/// An internal invariant that valid inputs cannot violate was violated.
struct consistency_error : error {
    using error::error;
};

/// Solver box too small to hold the requested number of bound states.
struct box_error : domain_error {
    using domain_error::domain_error;
};

} // namespace kratzer
