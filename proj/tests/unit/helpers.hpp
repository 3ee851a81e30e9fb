#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "acband/runtime_matrix.hpp"
#include "acband/types.hpp"

namespace acband::test {

inline RuntimeMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows, double timeout) {
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return RuntimeMatrix(rows.size(), rows.empty() ? 0 : rows.front().size(), timeout, std::move(flat));
}

/// Runtimes uniform in [lo, hi), drawn with std::mt19937 so tests do not
/// depend on the library's own generator.
inline RuntimeMatrix random_matrix(std::size_t n, std::size_t m, unsigned seed, double lo = 0.1, double hi = 10.0,
                                   double timeout = 10.0) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n * m);
    for (double& x : v) x = dist(gen);
    return RuntimeMatrix(n, m, timeout, std::move(v));
}

inline std::vector<ConfigId> config_range(std::size_t n) {
    std::vector<ConfigId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.emplace_back(static_cast<std::uint32_t>(i));
    return ids;
}

inline std::vector<InstanceId> instance_range(std::size_t begin, std::size_t end) {
    std::vector<InstanceId> ids;
    for (std::size_t i = begin; i < end; ++i) ids.emplace_back(static_cast<std::uint32_t>(i));
    return ids;
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("acband_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        std::ofstream(file(name), std::ios::binary) << content;
        return file(name);
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace acband::test

#define EXPECT_ACBAND_ERROR(stmt, errc)                                  \
    do {                                                                 \
        try {                                                            \
            stmt;                                                        \
            ADD_FAILURE() << "expected " #errc " from " #stmt;           \
        } catch (const ::acband::Error& e) {                             \
            EXPECT_EQ(e.code(), ::acband::Errc::errc) << e.what();       \
        }                                                                \
    } while (0)
