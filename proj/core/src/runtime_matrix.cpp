#include "acband/runtime_matrix.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>

#include "acband/error.hpp"

namespace acband {

namespace {

constexpr std::string_view kBinaryMagic = "ACBM1";

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& out) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) return false;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

template <class Int>
bool parse_int(std::string_view text, Int& out) {
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

std::string read_file(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in) raise(Errc::IoError, "cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct CsvHeader {
    std::size_t configs = 0;
    std::size_t instances = 0;
    double timeout = 0.0;
};

CsvHeader parse_header(std::string_view line, const std::string& where) {
    if (line.empty() || line.front() != '#') raise(Errc::MalformedFile, where + ": missing '#configs=...' header");
    line.remove_prefix(1);
    while (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    CsvHeader header;
    bool seen_configs = false, seen_instances = false, seen_timeout = false;
    while (!line.empty()) {
        const auto comma = line.find(',');
        const std::string_view field = line.substr(0, comma);
        line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);

        const auto eq = field.find('=');
        if (eq == std::string_view::npos) raise(Errc::MalformedFile, where + ": bad header field '" + std::string(field) + "'");
        const auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        bool ok = false;
        if (key == "configs") {
            ok = parse_int(value, header.configs);
            seen_configs = true;
        } else if (key == "instances") {
            ok = parse_int(value, header.instances);
            seen_instances = true;
        } else if (key == "timeout") {
            ok = parse_double(value, header.timeout) && header.timeout > 0.0;
            seen_timeout = true;
        }
        if (!ok) raise(Errc::MalformedFile, where + ": bad header field '" + std::string(field) + "'");
    }
    if (!seen_configs || !seen_instances || !seen_timeout)
        raise(Errc::MalformedFile, where + ": header must declare configs, instances and timeout");
    return header;
}

RuntimeMatrix load_csv(const std::filesystem::path& path) {
    const std::string text = read_file(path, std::ios::in);
    const std::string where = path.string();
    std::string_view rest(text);

    auto next_line = [&rest]() {
        const auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return line;
    };

    const CsvHeader header = parse_header(next_line(), where);
    std::vector<double> values;
    values.reserve(header.configs * header.instances);

    std::size_t rows = 0;
    while (!rest.empty()) {
        std::string_view line = next_line();
        if (line.empty()) continue;
        ++rows;
        if (rows > header.configs)
            raise(Errc::DimensionMismatch, where + ": more than the declared " + std::to_string(header.configs) + " rows");
        std::size_t cols = 0;
        while (true) {
            const auto comma = line.find(',');
            double v = 0.0;
            if (!parse_double(line.substr(0, comma), v))
                raise(Errc::MalformedFile, where + ": unparsable value in row " + std::to_string(rows));
            if (!(v > 0.0))
                raise(Errc::NonPositiveRuntime, where + ": row " + std::to_string(rows) + " has non-positive runtime");
            values.push_back(v);
            ++cols;
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        if (cols != header.instances)
            raise(Errc::MalformedFile, where + ": row " + std::to_string(rows) + " has " + std::to_string(cols) +
                                           " values, expected " + std::to_string(header.instances));
    }
    if (rows != header.configs)
        raise(Errc::DimensionMismatch,
              where + ": declared " + std::to_string(header.configs) + " rows, found " + std::to_string(rows));
    return RuntimeMatrix(header.configs, header.instances, header.timeout, std::move(values));
}

template <class T>
T read_le(const char* p) {
    T v;
    std::memcpy(&v, p, sizeof v);
    if constexpr (std::endian::native == std::endian::big) {
        auto* bytes = reinterpret_cast<unsigned char*>(&v);
        for (std::size_t i = 0; i < sizeof v / 2; ++i) std::swap(bytes[i], bytes[sizeof v - 1 - i]);
    }
    return v;
}

template <class T>
void write_le(std::ostream& out, T v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto* bytes = reinterpret_cast<unsigned char*>(&v);
        for (std::size_t i = 0; i < sizeof v / 2; ++i) std::swap(bytes[i], bytes[sizeof v - 1 - i]);
    }
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

RuntimeMatrix load_binary(const std::filesystem::path& path) {
    const std::string data = read_file(path, std::ios::in | std::ios::binary);
    const std::string where = path.string();
    constexpr std::size_t header_size = 5 + 3 * sizeof(std::uint64_t);
    if (data.size() < header_size || std::string_view(data).substr(0, 5) != kBinaryMagic)
        raise(Errc::MalformedFile, where + ": missing ACBM1 magic");

    const char* p = data.data() + 5;
    const auto n = read_le<std::uint64_t>(p);
    const auto m = read_le<std::uint64_t>(p + 8);
    const auto timeout_ms = read_le<std::uint64_t>(p + 16);
    if (timeout_ms == 0) raise(Errc::MalformedFile, where + ": zero timeout");
    if (m != 0 && n > (data.size() - header_size) / sizeof(float) / m + 1)
        raise(Errc::DimensionMismatch, where + ": declared dimensions exceed file size");
    const std::size_t expected = header_size + n * m * sizeof(float);
    if (data.size() != expected)
        raise(Errc::DimensionMismatch, where + ": expected " + std::to_string(expected) + " bytes, found " + std::to_string(data.size()));

    std::vector<double> values(n * m);
    const char* body = data.data() + header_size;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const float f = std::bit_cast<float>(read_le<std::uint32_t>(body + i * 4));
        if (!(f > 0.0f)) raise(Errc::NonPositiveRuntime, where + ": non-positive runtime at entry " + std::to_string(i));
        values[i] = f;
    }
    return RuntimeMatrix(n, m, static_cast<double>(timeout_ms) / 1000.0, std::move(values));
}

}  // namespace

RuntimeMatrix::RuntimeMatrix(std::size_t n_configs, std::size_t n_instances, double timeout, std::vector<double> values)
    : n_configs_(n_configs), n_instances_(n_instances), timeout_(timeout), values_(std::move(values)) {
    if (!(timeout_ > 0.0) || !std::isfinite(timeout_)) raise(Errc::InvalidArgument, "timeout must be positive and finite");
    if (values_.size() != n_configs_ * n_instances_)
        raise(Errc::DimensionMismatch, "runtime matrix holds " + std::to_string(values_.size()) + " values, expected " +
                                           std::to_string(n_configs_ * n_instances_));
    for (double& v : values_) {
        if (!(v > 0.0)) raise(Errc::NonPositiveRuntime, "runtime matrix entries must be positive");
        if (v > timeout_) {
            v = timeout_;
            ++clamped_;
        }
    }
}

void RuntimeMatrix::check_config(ConfigId config) const {
    if (config.index() >= n_configs_)
        raise(Errc::IndexOutOfRange, "config " + std::to_string(config.value) + " outside [0, " + std::to_string(n_configs_) + ")");
}

void RuntimeMatrix::check_instance(InstanceId instance) const {
    if (instance.index() >= n_instances_)
        raise(Errc::IndexOutOfRange,
              "instance " + std::to_string(instance.value) + " outside [0, " + std::to_string(n_instances_) + ")");
}

double RuntimeMatrix::at(ConfigId config, InstanceId instance) const {
    check_config(config);
    check_instance(instance);
    return (*this)(config.index(), instance.index());
}

std::span<const double> RuntimeMatrix::row(ConfigId config) const {
    check_config(config);
    return std::span<const double>(values_).subspan(config.index() * n_instances_, n_instances_);
}

MatrixFormat matrix_format_from_path(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? MatrixFormat::Csv : MatrixFormat::Binary;
}

RuntimeMatrix load_runtime_matrix(const std::filesystem::path& path, MatrixFormat format) {
    return format == MatrixFormat::Csv ? load_csv(path) : load_binary(path);
}

void save_runtime_matrix(const RuntimeMatrix& matrix, const std::filesystem::path& path, MatrixFormat format) {
    std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot write " + path.string());

    if (format == MatrixFormat::Csv) {
        out << "#configs=" << matrix.n_configs() << ",instances=" << matrix.n_instances()
            << ",timeout=" << format_double(matrix.timeout()) << '\n';
        std::string line;
        for (std::size_t c = 0; c < matrix.n_configs(); ++c) {
            line.clear();
            for (std::size_t i = 0; i < matrix.n_instances(); ++i) {
                if (i) line.push_back(',');
                line += format_double(matrix(c, i));
            }
            line.push_back('\n');
            out << line;
        }
    } else {
        out.write(kBinaryMagic.data(), static_cast<std::streamsize>(kBinaryMagic.size()));
        write_le<std::uint64_t>(out, matrix.n_configs());
        write_le<std::uint64_t>(out, matrix.n_instances());
        write_le<std::uint64_t>(out, static_cast<std::uint64_t>(std::llround(matrix.timeout() * 1000.0)));
        for (double v : matrix.values()) write_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    }
    if (!out) raise(Errc::IoError, "failed writing " + path.string());
}

}  // namespace acband
