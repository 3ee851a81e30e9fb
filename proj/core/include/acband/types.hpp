#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

namespace acband {

/// Index of a configuration within a scenario (a row of the runtime matrix).
struct ConfigId {
    std::uint32_t value = 0;

    constexpr ConfigId() = default;
    constexpr explicit ConfigId(std::uint32_t v) : value(v) {}
    constexpr std::size_t index() const { return value; }

    friend constexpr auto operator<=>(ConfigId, ConfigId) = default;
};

/// Index of a problem instance within a scenario (a column of the runtime matrix).
struct InstanceId {
    std::uint32_t value = 0;

    constexpr InstanceId() = default;
    constexpr explicit InstanceId(std::uint32_t v) : value(v) {}
    constexpr std::size_t index() const { return value; }

    friend constexpr auto operator<=>(InstanceId, InstanceId) = default;
};

/// User-facing knobs of an AC-Band run. `n0` and `budget` are resolved
/// against the oracle when left empty (2 * N_{alpha,delta} and the full
/// instance count respectively).
struct ACBandParams {
    int k = 2;
    double alpha = 0.05;
    double delta = 0.05;
    // Reported only; the epoch schedule never reads it.
    double epsilon = 0.05;
    std::optional<std::int64_t> n0;
    std::optional<std::int64_t> budget;
    std::uint64_t seed = 0;
};

}  // namespace acband

template <>
struct std::hash<acband::ConfigId> {
    std::size_t operator()(acband::ConfigId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

template <>
struct std::hash<acband::InstanceId> {
    std::size_t operator()(acband::InstanceId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
