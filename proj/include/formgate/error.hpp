/**
 * @file error.hpp
 * @brief Error codes shared by every formgate module.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace formgate {

enum class ErrorCode {
    NotSymmetric,
    NotSquare,
    NotUnimodular,
    NotDefinite,
    BoxTooLarge,
    RankCapExceeded,
    UnknownSummand,
    UnknownLocalClass,
    AllTrivial,
    EulerIdentityViolation,
    DataInconsistency,
    NotDivisible,
    FixedVectorPresent,
    NotApplicable,
    InvalidArgument,
    InvalidManifest,
    ParseError,
};

[[nodiscard]] std::string_view error_code_name(ErrorCode code) noexcept;

/// Exit status the CLI reports for an error of this kind (2 invalid input, 3 data inconsistency).
[[nodiscard]] int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message)
        , m_code(code)
        , m_detail(message)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return m_code; }
    /// The message without the code prefix.
    [[nodiscard]] const std::string& detail() const noexcept { return m_detail; }

private:
    ErrorCode m_code;
    std::string m_detail;
};

}  // namespace formgate
