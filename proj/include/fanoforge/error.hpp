#pragma once

#include <stdexcept>
#include <string>

namespace fanoforge {

enum class ErrorKind {
    InvalidInput,
    Infeasible,
    AmbiguousRange,
    Inconsistent,
    UnknownName,
    SyntaxError,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::AmbiguousRange: return "AmbiguousRange";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::SyntaxError: return "SyntaxError";
    }
    return "Unknown";
}

/// Every failure raised by the engine carries a kind so the CLI can map it to an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parser diagnostics additionally carry the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, std::size_t offset, const std::string& what)
        : Error(kind, what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace fanoforge
