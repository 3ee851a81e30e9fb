#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acband/error.hpp"
#include "acband/runtime_matrix.hpp"
#include "acband/theory.hpp"

namespace acband::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitBudget = 4;

int exit_code_for(const Error& error);

/// ACBAND_THREADS, or 1 when unset or unparsable.
unsigned threads_from_env();

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct RunOptions {
    unsigned threads = 1;
    bool trace = true;
};

/// One result_seed<S>.json (and trace_seed<S>.jsonl) per seed plus
/// aggregate.csv in the scenario's output directory.
int cmd_run(const std::filesystem::path& scenario, const RunOptions& options, std::ostream& out, std::ostream& err);

struct BudgetOptions {
    std::vector<double> alphas;
    std::vector<double> deltas;
    std::vector<int> ks;
    std::optional<std::int64_t> n0;
    N0Rule rule = N0Rule::Double;
    double gamma_inv = 1.0;
    /// Fill unspecified axes with the standard grid instead of requiring them.
    bool grid = false;
    std::filesystem::path output;
};

int cmd_budget(const BudgetOptions& options, std::ostream& out, std::ostream& err);

struct GenOptions {
    std::string model = "exponential";
    std::size_t configs = 0;
    std::size_t instances = 0;
    double alpha = 0.1;
    double epsilon = 0.1;
    double timeout = 900.0;
    double median_runtime = 5.0;
    double config_sigma = 1.0;
    double instance_sigma = 1.0;
    double noise_sigma = 1.0;
    std::uint64_t seed = 0;
    MatrixFormat format = MatrixFormat::Csv;
    /// Path prefix; the matrix goes to <prefix>.csv or .acbm and the sidecar to <prefix>.json.
    std::filesystem::path output;
};

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);

struct EvalOptions {
    std::filesystem::path matrix;
    /// A result_seed<S>.json: supplies winner, subset and CPU time.
    std::filesystem::path result;
    std::optional<std::uint32_t> winner;
    /// JSON array of ids, a result JSON (its "sampled" list) or whitespace-separated ids.
    std::filesystem::path subset;
    double delta_m = 0.1;
    std::optional<double> cpu_time;
    std::string format = "json";
    std::filesystem::path output;
};

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace acband::cli
