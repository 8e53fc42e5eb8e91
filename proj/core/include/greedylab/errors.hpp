#pragma once

#include <stdexcept>
#include <string>

namespace greedylab {

// Bad input: dimension mismatch, non-finite entries, malformed ids or configs.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested exact computation exceeds a configured enumeration cap.
class CapacityError : public std::runtime_error {
public:
    CapacityError(const std::string& cap_name, const std::string& what)
        : std::runtime_error(what), cap_(cap_name) {}
    const std::string& cap() const noexcept { return cap_; }

private:
    std::string cap_;
};

// The space has no finite vertex description; callers fall back to probes.
class UnsupportedOracle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace greedylab
