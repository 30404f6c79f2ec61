#pragma once

#include <stdexcept>
#include <string>

namespace chisq {

enum class ErrorCode
{
    InvalidArgument,
    DimensionMismatch,
    CapExceeded,
    ParseError,
    SchemaViolation,
    RelationViolation,
    Io,
    Usage,
};

// Stable short names used in CLI error payloads.
inline const char* ErrorCodeName(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument:
        return "E_INVALID_ARGUMENT";
    case ErrorCode::DimensionMismatch:
        return "E_DIMENSION";
    case ErrorCode::CapExceeded:
        return "E_CAP";
    case ErrorCode::ParseError:
        return "E_PARSE";
    case ErrorCode::SchemaViolation:
        return "E_SCHEMA";
    case ErrorCode::RelationViolation:
        return "E_RELATION";
    case ErrorCode::Io:
        return "E_IO";
    case ErrorCode::Usage:
        return "E_USAGE";
    }
    return "E_UNKNOWN";
}

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const
    {
        return code_;
    }

private:
    ErrorCode code_;
};

}  // namespace chisq
