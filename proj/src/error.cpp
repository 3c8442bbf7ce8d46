#include "formgate/error.hpp"

namespace formgate {

std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotDefinite: return "NotDefinite";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::RankCapExceeded: return "RankCapExceeded";
    case ErrorCode::UnknownSummand: return "UnknownSummand";
    case ErrorCode::UnknownLocalClass: return "UnknownLocalClass";
    case ErrorCode::AllTrivial: return "AllTrivial";
    case ErrorCode::EulerIdentityViolation: return "EulerIdentityViolation";
    case ErrorCode::DataInconsistency: return "DataInconsistency";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::FixedVectorPresent: return "FixedVectorPresent";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidManifest: return "InvalidManifest";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EulerIdentityViolation:
    case ErrorCode::DataInconsistency:
        return 3;
    default:
        return 2;
    }
}

}  // namespace formgate
