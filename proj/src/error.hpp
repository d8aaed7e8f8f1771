#pragma once

#include <stdexcept>
#include <string>

namespace aqc {

// Error categories; mirrored one-to-one by the aqc_status codes in the
// public C header.
enum class ErrorCode {
    InvalidArgument,
    EmptyInput,
    OddLength,
    LabelCount,
    SizeMismatch,
    Overlap,
    TooSmall,
    TooLarge,
    RetryExhausted,
    LengthMismatch,
    Config,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyInput:      return "EmptyInput";
        case ErrorCode::OddLength:       return "OddLength";
        case ErrorCode::LabelCount:      return "LabelCountError";
        case ErrorCode::SizeMismatch:    return "SizeMismatch";
        case ErrorCode::Overlap:         return "OverlapError";
        case ErrorCode::TooSmall:        return "TooSmall";
        case ErrorCode::TooLarge:        return "TooLarge";
        case ErrorCode::RetryExhausted:  return "RetryExhausted";
        case ErrorCode::LengthMismatch:  return "LengthMismatch";
        case ErrorCode::Config:          return "ConfigError";
        case ErrorCode::Io:              return "IoError";
    }
    return "UnknownError";
}

}  // namespace aqc
