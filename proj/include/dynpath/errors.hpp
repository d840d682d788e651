#ifndef DYNPATH_ERRORS_HPP
#define DYNPATH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynpath {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SelfLoopError : Error {
    explicit SelfLoopError(const std::string& what) : Error(what) {}
};

struct DuplicateEdgeError : Error {
    explicit DuplicateEdgeError(const std::string& what) : Error(what) {}
};

struct MissingEdgeError : Error {
    explicit MissingEdgeError(const std::string& what) : Error(what) {}
};

struct OutOfRangeError : Error {
    explicit OutOfRangeError(const std::string& what) : Error(what) {}
};

struct EqualEndpointsError : Error {
    explicit EqualEndpointsError(const std::string& what) : Error(what) {}
};

struct AlreadyMarkedError : Error {
    explicit AlreadyMarkedError(const std::string& what) : Error(what) {}
};

struct NotMarkedError : Error {
    explicit NotMarkedError(const std::string& what) : Error(what) {}
};

/// An input exceeds the configured budget of an exponential-time routine.
struct TooLargeError : Error {
    explicit TooLargeError(const std::string& what) : Error(what) {}
};

struct WidthExceededError : Error {
    explicit WidthExceededError(const std::string& what) : Error(what) {}
};

struct TraceParseError : Error {
    TraceParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct IllegalEventError : Error {
    IllegalEventError(std::size_t index, const std::string& what)
        : Error("event " + std::to_string(index) + ": " + what), index(index) {}
    std::size_t index;
};

} // namespace dynpath

#endif
