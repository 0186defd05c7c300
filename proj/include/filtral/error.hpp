#pragma once

#include <stdexcept>
#include <string>

namespace filtral {

enum class ErrorCode {
    NonAdmissibleIdeal,
    DegenerateRelation,
    AlgebraMismatch,
    CapExceeded,
    NotASubmodule,
    SearchCapExceeded,
    MemberUnknown,
    ClosureViolation,
    InvalidFiltration,
    NotTilting,
    SourceClassViolation,
    ParseError,
    ValidationFailure,
    Internal,
};

inline const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::NonAdmissibleIdeal: return "NonAdmissibleIdeal";
    case ErrorCode::DegenerateRelation: return "DegenerateRelation";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotASubmodule: return "NotASubmodule";
    case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorCode::MemberUnknown: return "MemberUnknown";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::InvalidFiltration: return "InvalidFiltration";
    case ErrorCode::NotTilting: return "NotTilting";
    case ErrorCode::SourceClassViolation: return "SourceClassViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
    {
    }
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what)
{
    if (!cond)
        fail(code, what);
}

} // namespace filtral
