#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace towerlab {

enum class ErrorCode {
    NonPrime,
    DegreeZero,
    CapExceeded,
    DivisionByZero,
    SpecMismatch,
    NoSuchSubfield,
    InvalidParameter,
    ZeroArgument,
    NoSolution,
    Ambiguous,
    DegenerateDenominator,
    WildIndex,
    BothWild,
    NotPPower,
    ZeroDivisor,
    DefectNonzero,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::NoSuchSubfield: return "NoSuchSubfield";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::WildIndex: return "WildIndex";
    case ErrorCode::BothWild: return "BothWild";
    case ErrorCode::NotPPower: return "NotPPower";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::DefectNonzero: return "DefectNonzero";
    }
    return "Unknown";
}

/// Every contract violation in the library surfaces as this exception.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace towerlab
