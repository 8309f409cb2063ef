#pragma once

#include <stdexcept>
#include <string>

namespace picardkit {

enum class ErrorCode {
    FactorOne,
    LengthMismatch,
    IllDefinedHom,
    InfiniteGroup,
    CompositionMismatch,
    SearchTooLarge,
    TorsionViolation,
    NotNormalized,
    Mismatch,
    InvalidCocycle,
    InvalidFunctor,
    NotPermutative,
    PresentationMismatch,
    BudgetExceeded,
    SchemaError,
    Internal,
};

const char* error_name(ErrorCode code);

class PkError : public std::runtime_error {
public:
    PkError(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw PkError(code, msg);
}

inline const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::FactorOne: return "FactorOne";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::IllDefinedHom: return "IllDefinedHom";
        case ErrorCode::InfiniteGroup: return "InfiniteGroup";
        case ErrorCode::CompositionMismatch: return "CompositionMismatch";
        case ErrorCode::SearchTooLarge: return "SearchTooLarge";
        case ErrorCode::TorsionViolation: return "TorsionViolation";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::Mismatch: return "Mismatch";
        case ErrorCode::InvalidCocycle: return "InvalidCocycle";
        case ErrorCode::InvalidFunctor: return "InvalidFunctor";
        case ErrorCode::NotPermutative: return "NotPermutative";
        case ErrorCode::PresentationMismatch: return "PresentationMismatch";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace picardkit
