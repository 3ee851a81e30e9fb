#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "acband/oracle.hpp"

namespace acband {

/// How to launch one target-algorithm run.
///
/// `command` is split on whitespace into argv; no shell is involved. A token
/// equal to `{config}` expands to the configuration's own whitespace-split
/// arguments, and the single `{instance}` placeholder (it may sit inside a
/// token, e.g. `--file={instance}`) is replaced by the instance path. A run
/// succeeds when the process exits with status 0.
struct ExternalRunnerSpec {
    std::string command;
    /// Arguments per ConfigId.
    std::vector<std::string> configs;
    /// Path per InstanceId.
    std::vector<std::string> instances;
    double timeout = 900.0;
    std::filesystem::path working_directory;
    std::map<std::string, std::string> environment;
    /// When false a failing run raises NonZeroExit; when true it simply never finishes.
    bool nonzero_exit_as_timeout = true;
};

/// Throws InvalidArgument unless the template has exactly one `{instance}`.
void validate_runner_spec(const ExternalRunnerSpec& spec);

/// argv for one (config, instance) run.
std::vector<std::string> expand_command(const ExternalRunnerSpec& spec, ConfigId config, InstanceId instance);

/// Starts every member at once, each in its own process group, and kills the
/// others as soon as one exits successfully. Wall-clock time of the finisher
/// is the finish time; with no finisher before the timeout everyone is killed
/// and no winner is recorded. Accepts groups of one.
GroupOutcome run_external(const ExternalRunnerSpec& spec, std::span<const ConfigId> group, InstanceId instance);

class ExternalOracle final : public CostOracle {
public:
    explicit ExternalOracle(ExternalRunnerSpec spec);

    std::size_t n_configs() const override { return spec_.configs.size(); }
    std::size_t n_instances() const override { return spec_.instances.size(); }
    double timeout() const override { return spec_.timeout; }

    GroupOutcome evaluate_group(std::span<const ConfigId> group, InstanceId instance, SeededRng& rng) const override;
    double evaluate_single(ConfigId config, InstanceId instance) const override;

private:
    ExternalRunnerSpec spec_;
};

}  // namespace acband
