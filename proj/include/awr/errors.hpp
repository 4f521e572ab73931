#pragma once

#include <stdexcept>
#include <string>

namespace awr {

// Coarse failure categories; the C API maps these one-to-one onto status codes.
enum class ErrorKind {
    argument,    // bad value passed to an operation (domain violation)
    parse,       // malformed configuration text
    validation,  // initial data rejected by an admissibility check
    runtime,     // solver hard failure (positivity/ceiling, non-convergence)
    io,          // file read/write failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    // `detail` carries a machine-readable tag, e.g. the violated hypothesis
    // name or the missing config key.
    Error(ErrorKind kind, std::string message, std::string detail)
        : std::runtime_error(std::move(message)), kind_(kind), detail_(std::move(detail)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              const std::string& detail) {
    throw Error(kind, message, detail);
}

}  // namespace awr
