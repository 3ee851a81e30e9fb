#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acband {

enum class Errc {
    InvalidArgument,
    DomainError,
    InvalidN0,
    InsufficientBudget,
    BudgetTooSmall,
    PoolExhausted,
    IndexOutOfRange,
    InstanceReuse,
    DimensionMismatch,
    NonPositiveRuntime,
    MalformedFile,
    IoError,
    SpawnFailure,
    NonZeroExit,
    ConfigNotInSubset,
    InfeasibleAlpha,
    MissingGapData,
};

/// Coarse grouping used by the CLI to choose an exit code.
enum class ErrorCategory { Config, Data, Budget };

std::string_view errc_name(Errc code) noexcept;
ErrorCategory errc_category(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return errc_category(code_); }

private:
    Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace acband
