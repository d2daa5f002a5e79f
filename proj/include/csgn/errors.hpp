#pragma once

#include <stdexcept>
#include <string>

namespace csgn {

enum class ErrorCode {
    InvalidParams,
    DegenerateD,
    InadmissibleBetas,
    EpsilonTooLarge,
    DegenerateFamily,
    OverlappingSupports,
    NonIntegrableDiagonal,
    DiagonalSingularity,
    TrivialProfile,
    InsufficientPoints,
    NotApplicable,
    PreconditionViolated,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::DegenerateD: return "DegenerateD";
        case ErrorCode::InadmissibleBetas: return "InadmissibleBetas";
        case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
        case ErrorCode::DegenerateFamily: return "DegenerateFamily";
        case ErrorCode::OverlappingSupports: return "OverlappingSupports";
        case ErrorCode::NonIntegrableDiagonal: return "NonIntegrableDiagonal";
        case ErrorCode::DiagonalSingularity: return "DiagonalSingularity";
        case ErrorCode::TrivialProfile: return "TrivialProfile";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace csgn
