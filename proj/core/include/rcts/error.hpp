#pragma once

#include <stdexcept>
#include <string>

namespace rcts {

// Malformed or inconsistent input: bad ids, schema violations, broken
// cross references, unsatisfiable preconditions.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An exploration or enumeration hit a configured cap before finishing.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rcts
