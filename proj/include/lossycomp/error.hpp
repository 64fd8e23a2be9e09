#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lossycomp {

/// Machine-readable failure categories. Every thrown lossycomp::Error carries one.
enum class Errc {
    // input validation
    NegativeProbability,
    PMFNotNormalized,
    ZeroMarginalRow,
    IndexOutOfRange,
    DimensionMismatch,
    InvalidAlphabet,
    InvalidDistortion,
    InvalidChannel,
    InvalidConfig,
    ParseError,
    UnknownBuiltin,
    DomainError,
    AlphabetTooLarge,
    RecoverySpaceTooLarge,
    InstanceTooLarge,
    NotInGammaD,
    UnannotatedChannel,
    // numerical
    NumericalUnderflow,
    NotConverged,
    Infeasible,
    EmptySupport,
    MembershipViolation,
    // verification
    CheckFailed,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::NegativeProbability: return "NegativeProbability";
        case Errc::PMFNotNormalized: return "PMFNotNormalized";
        case Errc::ZeroMarginalRow: return "ZeroMarginalRow";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::InvalidAlphabet: return "InvalidAlphabet";
        case Errc::InvalidDistortion: return "InvalidDistortion";
        case Errc::InvalidChannel: return "InvalidChannel";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownBuiltin: return "UnknownBuiltin";
        case Errc::DomainError: return "DomainError";
        case Errc::AlphabetTooLarge: return "AlphabetTooLarge";
        case Errc::RecoverySpaceTooLarge: return "RecoverySpaceTooLarge";
        case Errc::InstanceTooLarge: return "InstanceTooLarge";
        case Errc::NotInGammaD: return "NotInGammaD";
        case Errc::UnannotatedChannel: return "UnannotatedChannel";
        case Errc::NumericalUnderflow: return "NumericalUnderflow";
        case Errc::NotConverged: return "NotConverged";
        case Errc::Infeasible: return "Infeasible";
        case Errc::EmptySupport: return "EmptySupport";
        case Errc::MembershipViolation: return "MembershipViolation";
        case Errc::CheckFailed: return "CheckFailed";
    }
    return "Unknown";
}

/// Process exit status for an error: 2 validation, 3 numerical failure, 4 check failure.
constexpr int exit_code_for(Errc code) noexcept {
    switch (code) {
        case Errc::NumericalUnderflow:
        case Errc::NotConverged:
        case Errc::Infeasible:
        case Errc::EmptySupport:
        case Errc::MembershipViolation:
            return 3;
        case Errc::CheckFailed:
            return 4;
        default:
            return 2;
    }
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

}  // namespace lossycomp
