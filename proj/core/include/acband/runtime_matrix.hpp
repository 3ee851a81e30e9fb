#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "acband/types.hpp"

namespace acband {

enum class MatrixFormat { Csv, Binary };

/// Dense configurations x instances table of runtimes in seconds.
///
/// Every entry lies in (0, timeout]; an entry equal to the timeout encodes a
/// timed-out run. Entries above the timeout are clamped on construction and
/// counted in clamped_count(). Immutable after construction.
class RuntimeMatrix {
public:
    RuntimeMatrix() = default;
    RuntimeMatrix(std::size_t n_configs, std::size_t n_instances, double timeout, std::vector<double> values);

    std::size_t n_configs() const noexcept { return n_configs_; }
    std::size_t n_instances() const noexcept { return n_instances_; }
    double timeout() const noexcept { return timeout_; }
    std::size_t clamped_count() const noexcept { return clamped_; }

    /// Bounds-checked lookup; throws IndexOutOfRange.
    double at(ConfigId config, InstanceId instance) const;
    double operator()(std::size_t config, std::size_t instance) const noexcept {
        return values_[config * n_instances_ + instance];
    }
    std::span<const double> row(ConfigId config) const;
    std::span<const double> values() const noexcept { return values_; }

    void check_config(ConfigId config) const;
    void check_instance(InstanceId instance) const;

private:
    std::size_t n_configs_ = 0;
    std::size_t n_instances_ = 0;
    double timeout_ = 0.0;
    std::size_t clamped_ = 0;
    std::vector<double> values_;
};

/// Picks the on-disk format from the extension: `.csv` is CSV, anything
/// else (`.acbm`, `.bin`) is the binary layout.
MatrixFormat matrix_format_from_path(const std::filesystem::path& path);

RuntimeMatrix load_runtime_matrix(const std::filesystem::path& path, MatrixFormat format);
void save_runtime_matrix(const RuntimeMatrix& matrix, const std::filesystem::path& path, MatrixFormat format);

}  // namespace acband
