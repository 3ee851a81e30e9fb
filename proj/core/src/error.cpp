#include "acband/error.hpp"

namespace acband {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::DomainError: return "DomainError";
        case Errc::InvalidN0: return "InvalidN0";
        case Errc::InsufficientBudget: return "InsufficientBudget";
        case Errc::BudgetTooSmall: return "BudgetTooSmall";
        case Errc::PoolExhausted: return "PoolExhausted";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::InstanceReuse: return "InstanceReuse";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NonPositiveRuntime: return "NonPositiveRuntime";
        case Errc::MalformedFile: return "MalformedFile";
        case Errc::IoError: return "IoError";
        case Errc::SpawnFailure: return "SpawnFailure";
        case Errc::NonZeroExit: return "NonZeroExit";
        case Errc::ConfigNotInSubset: return "ConfigNotInSubset";
        case Errc::InfeasibleAlpha: return "InfeasibleAlpha";
        case Errc::MissingGapData: return "MissingGapData";
    }
    return "Unknown";
}

ErrorCategory errc_category(Errc code) noexcept {
    switch (code) {
        case Errc::InsufficientBudget:
        case Errc::BudgetTooSmall:
            return ErrorCategory::Budget;
        case Errc::PoolExhausted:
        case Errc::IndexOutOfRange:
        case Errc::DimensionMismatch:
        case Errc::NonPositiveRuntime:
        case Errc::MalformedFile:
        case Errc::IoError:
        case Errc::SpawnFailure:
        case Errc::NonZeroExit:
        case Errc::ConfigNotInSubset:
            return ErrorCategory::Data;
        default:
            return ErrorCategory::Config;
    }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace acband
