#pragma once

#include <stdexcept>
#include <string>

namespace hilberg {

// Bad arguments or malformed input files. The CLI maps this to exit code 2.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Work refused because it would exceed a configured limit (enumeration size,
// integer range, input too small). The CLI maps this to exit code 3.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// A window that has probability zero under the requested measure, e.g. two
// different bits attached to the same statement index.
class impossible_event_error : public std::runtime_error {
public:
    explicit impossible_event_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hilberg
