#include <gtest/gtest.h>

#include "acband/error.hpp"
#include "acband/runtime_matrix.hpp"
#include "acband/synthetic.hpp"
#include "helpers.hpp"

using namespace acband;
using acband::test::TempDir;

TEST(RuntimeMatrix, LoadsCsvWithHeader) {
    TempDir dir;
    const auto p = dir.write("m.csv",
                             "#configs=3,instances=4,timeout=900\n"
                             "1,2,3,4\n"
                             "5,6,7,8\n"
                             "9,10,11,12.5\n");
    const RuntimeMatrix m = load_runtime_matrix(p, MatrixFormat::Csv);
    EXPECT_EQ(m.n_configs(), 3u);
    EXPECT_EQ(m.n_instances(), 4u);
    EXPECT_EQ(m.timeout(), 900.0);
    EXPECT_EQ(m.at(ConfigId(2), InstanceId(3)), 12.5);
    EXPECT_EQ(m(1, 0), 5.0);
    EXPECT_EQ(m.clamped_count(), 0u);
}

TEST(RuntimeMatrix, ClampsAboveTimeout) {
    TempDir dir;
    const auto p = dir.write("m.csv", "#configs=1,instances=2,timeout=900\n1200,3\n");
    const RuntimeMatrix m = parse_matrix_csv(p);
    EXPECT_EQ(m.at(ConfigId(0), InstanceId(0)), 900.0);
    EXPECT_EQ(m.clamped_count(), 1u);
}

TEST(RuntimeMatrix, RaggedRowIsMalformed) {
    TempDir dir;
    const auto p = dir.write("m.csv", "#configs=2,instances=3,timeout=9\n1,2,3\n1,2\n");
    EXPECT_ACBAND_ERROR(load_runtime_matrix(p, MatrixFormat::Csv), MalformedFile);
}

TEST(RuntimeMatrix, CsvErrors) {
    TempDir dir;
    EXPECT_ACBAND_ERROR(parse_matrix_csv(dir.write("a.csv", "1,2\n")), MalformedFile);
    EXPECT_ACBAND_ERROR(parse_matrix_csv(dir.write("b.csv", "#configs=2,instances=2,timeout=9\n1,2\n")), DimensionMismatch);
    EXPECT_ACBAND_ERROR(parse_matrix_csv(dir.write("c.csv", "#configs=1,instances=2,timeout=9\n0,2\n")), NonPositiveRuntime);
    EXPECT_ACBAND_ERROR(parse_matrix_csv(dir.write("d.csv", "#configs=1,instances=2,timeout=9\n1,x\n")), MalformedFile);
    EXPECT_ACBAND_ERROR(parse_matrix_csv(dir.write("e.csv", "#configs=1,instances=1\n1\n")), MalformedFile);
    EXPECT_ACBAND_ERROR(parse_matrix_csv(dir.file("missing.csv")), IoError);
}

TEST(RuntimeMatrix, CsvRoundTripIsExact) {
    TempDir dir;
    const RuntimeMatrix m = test::random_matrix(5, 7, 1);
    save_runtime_matrix(m, dir.file("m.csv"), MatrixFormat::Csv);
    const RuntimeMatrix back = load_runtime_matrix(dir.file("m.csv"), MatrixFormat::Csv);
    ASSERT_EQ(back.values().size(), m.values().size());
    for (std::size_t i = 0; i < m.values().size(); ++i) EXPECT_EQ(back.values()[i], m.values()[i]);
}

TEST(RuntimeMatrix, BinaryRoundTripAtFloatPrecision) {
    TempDir dir;
    const RuntimeMatrix m = test::random_matrix(4, 6, 2);
    save_runtime_matrix(m, dir.file("m.acbm"), MatrixFormat::Binary);
    EXPECT_EQ(matrix_format_from_path(dir.file("m.acbm")), MatrixFormat::Binary);
    EXPECT_EQ(matrix_format_from_path(dir.file("m.csv")), MatrixFormat::Csv);
    const RuntimeMatrix back = load_runtime_matrix(dir.file("m.acbm"), MatrixFormat::Binary);
    EXPECT_EQ(back.n_configs(), 4u);
    EXPECT_EQ(back.n_instances(), 6u);
    EXPECT_EQ(back.timeout(), 10.0);
    for (std::size_t i = 0; i < m.values().size(); ++i)
        EXPECT_EQ(back.values()[i], static_cast<double>(static_cast<float>(m.values()[i])));
    // magic + 3 u64 + 24 floats
    EXPECT_EQ(test::slurp(dir.file("m.acbm")).size(), 5u + 24u + 24u * 4u);
}

TEST(RuntimeMatrix, BinaryRejectsTruncation) {
    TempDir dir;
    save_runtime_matrix(test::random_matrix(2, 2, 3), dir.file("m.acbm"), MatrixFormat::Binary);
    std::string bytes = test::slurp(dir.file("m.acbm"));
    bytes.pop_back();
    EXPECT_ACBAND_ERROR(load_runtime_matrix(dir.write("t.acbm", bytes), MatrixFormat::Binary), DimensionMismatch);
    EXPECT_ACBAND_ERROR(load_runtime_matrix(dir.write("x.acbm", "NOPE"), MatrixFormat::Binary), MalformedFile);
}

TEST(RuntimeMatrix, ConstructorChecks) {
    EXPECT_ACBAND_ERROR(RuntimeMatrix(2, 2, 1.0, {1, 1, 1}), DimensionMismatch);
    EXPECT_ACBAND_ERROR(RuntimeMatrix(1, 1, 1.0, {-1}), NonPositiveRuntime);
    const RuntimeMatrix m(1, 1, 1.0, {0.5});
    EXPECT_ACBAND_ERROR(m.at(ConfigId(1), InstanceId(0)), IndexOutOfRange);
    EXPECT_ACBAND_ERROR(m.at(ConfigId(0), InstanceId(1)), IndexOutOfRange);
}
