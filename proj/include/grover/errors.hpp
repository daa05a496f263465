#pragma once

#include <stdexcept>
#include <string>

namespace grover {

// Input validation failures use std::invalid_argument / std::out_of_range.
// The two types below cover the remaining failure classes.

/// A computation would exceed a configured size cap (qubit count, instance count).
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal cross-check failed, e.g. a factorization that does not reconstruct its input.
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace grover
