#pragma once

#include <stdexcept>
#include <string>

// Exceptions must keep default visibility even in hidden-visibility consumers
// (such as a Python extension module), or catch-by-type fails across the
// library boundary.
#if defined(__GNUC__) || defined(__clang__)
#define LALITA_VISIBLE __attribute__((visibility("default")))
#else
#define LALITA_VISIBLE
#endif

namespace lalita {

// Bad command line / config usage. CLI maps this to exit code 1.
class LALITA_VISIBLE UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data. CLI maps this to exit code 2.
class LALITA_VISIBLE DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unexpected internal failure. CLI maps this (and any other uncaught
// exception) to exit code 3.
class LALITA_VISIBLE InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lalita
