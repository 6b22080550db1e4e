#pragma once

#include <stdexcept>
#include <string>

namespace ipoly {

// Error taxonomy shared by the library, the C API and the CLI.
enum class ErrorKind {
    InvalidArgument,
    Parse,
    TooLarge,
    Budget,
    Singular,
    SlackViolation,
    Infeasible,
    Internal,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::TooLarge: return "too-large";
        case ErrorKind::Budget: return "budget";
        case ErrorKind::Singular: return "singularity";
        case ErrorKind::SlackViolation: return "slack-violation";
        case ErrorKind::Infeasible: return "infeasible";
        case ErrorKind::Internal: return "internal";
    }
    return "internal";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace ipoly
