#pragma once

#include <stdexcept>
#include <string>

namespace trapsim {

// Requested time lies beyond the simulated horizon; the caller should extend n.
class HorizonExceeded : public std::out_of_range {
public:
    explicit HorizonExceeded(const std::string& what) : std::out_of_range(what) {}
};

// The path left the materialized trap window; the caller should enlarge it.
class WindowViolation : public std::runtime_error {
public:
    explicit WindowViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trapsim
