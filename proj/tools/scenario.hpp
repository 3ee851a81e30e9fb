#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acband/external_runner.hpp"
#include "acband/hyperband_plan.hpp"
#include "acband/runtime_matrix.hpp"
#include "acband/statistics.hpp"
#include "acband/synthetic.hpp"
#include "acband/types.hpp"

namespace acband::cli {

struct DatasetSource {
    std::filesystem::path path;
    MatrixFormat format = MatrixFormat::Csv;
};

struct ExponentialSource {
    ExponentialScenarioSpec spec;
};

struct HeavyTailSource {
    HeavyTailSpec spec;
};

using ScenarioSource = std::variant<DatasetSource, ExponentialSource, HeavyTailSource, ExternalRunnerSpec>;

enum class Method { ACBand, Hyperband };

/// A parsed scenario file. Relative paths are resolved against the file's directory.
struct Scenario {
    ScenarioSource source;
    Method method = Method::ACBand;
    ACBandParams acband;
    StatisticKind statistic = StatisticKind::WinFrequency;
    HyperbandParams hyperband;
    /// R^delta cut-off for the aggregate table.
    double delta_m = 0.1;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path output;
};

/// Throws InvalidArgument for schema violations (unknown keys, missing
/// method parameters, more or less than one source) and IoError when the
/// file cannot be read.
Scenario parse_scenario(const std::filesystem::path& file);
Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base_dir);

}  // namespace acband::cli
