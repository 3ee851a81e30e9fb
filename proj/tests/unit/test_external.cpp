#include <gtest/gtest.h>

#include <chrono>

#include "acband/error.hpp"
#include "acband/external_runner.hpp"
#include "helpers.hpp"

using namespace acband;

TEST(ExternalRunner, Placeholders) {
    ExternalRunnerSpec s;
    s.command = "solver {config} --file={instance}";
    s.configs = {"-a 1 -b 2"};
    s.instances = {"/tmp/x.cnf"};
    EXPECT_EQ(expand_command(s, ConfigId(0), InstanceId(0)),
              (std::vector<std::string>{"solver", "-a", "1", "-b", "2", "--file=/tmp/x.cnf"}));
    s.command = "solver {config}";
    EXPECT_ACBAND_ERROR(validate_runner_spec(s), InvalidArgument);
    s.command = "solver {instance} {instance}";
    EXPECT_ACBAND_ERROR(validate_runner_spec(s), InvalidArgument);
}

TEST(ExternalRunner, FirstFinisherWinsAndOthersAreKilled) {
    // `sleep 0.1 0` and `sleep 5 0`: the instance adds zero seconds.
    ExternalRunnerSpec spec;
    spec.command = "sleep {config} {instance}";
    spec.configs = {"0.1", "5"};
    spec.instances = {"0"};
    spec.timeout = 10.0;
    const std::vector<ConfigId> g{ConfigId(0), ConfigId(1)};
    const auto start = std::chrono::steady_clock::now();
    const GroupOutcome o = run_external(spec, g, InstanceId(0));
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ASSERT_TRUE(o.winner);
    EXPECT_EQ(*o.winner, ConfigId(0));
    EXPECT_NEAR(o.cpu_charge, 0.2, 0.15);
    EXPECT_LT(took, 2.0);
}

TEST(ExternalRunner, TimeoutKillsEveryone) {
    ExternalRunnerSpec spec;
    spec.command = "sleep {config} {instance}";
    spec.configs = {"3", "4"};
    spec.instances = {"0"};
    spec.timeout = 0.5;
    const std::vector<ConfigId> g{ConfigId(0), ConfigId(1)};
    const auto start = std::chrono::steady_clock::now();
    const GroupOutcome o = run_external(spec, g, InstanceId(0));
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_FALSE(o.winner);
    EXPECT_EQ(o.cpu_charge, 1.0);
    EXPECT_LT(took, 2.0);
}

TEST(ExternalRunner, SpawnFailure) {
    ExternalRunnerSpec spec;
    spec.command = "/nonexistent/solver {config} {instance}";
    spec.configs = {"a", "b"};
    spec.instances = {"0"};
    const std::vector<ConfigId> g{ConfigId(0), ConfigId(1)};
    EXPECT_ACBAND_ERROR(run_external(spec, g, InstanceId(0)), SpawnFailure);
}

TEST(ExternalRunner, NonZeroExit) {
    ExternalRunnerSpec spec;
    spec.command = "{config} {instance}";
    spec.configs = {"false", "true"};
    spec.instances = {"x"};
    spec.timeout = 5.0;
    const std::vector<ConfigId> g{ConfigId(0), ConfigId(1)};
    const GroupOutcome o = run_external(spec, g, InstanceId(0));
    ASSERT_TRUE(o.winner);
    EXPECT_EQ(*o.winner, ConfigId(1));

    spec.configs = {"false", "sleep 1"};
    spec.nonzero_exit_as_timeout = false;
    EXPECT_ACBAND_ERROR(run_external(spec, g, InstanceId(0)), NonZeroExit);
}

TEST(ExternalRunner, WorkingDirectoryAndEnvironment) {
    test::TempDir dir;
    ExternalRunnerSpec spec;
    spec.command = "sh {instance} {config}";
    spec.configs = {"x", "y"};
    spec.instances = {"check.sh"};
    spec.working_directory = dir.path();
    spec.environment = {{"ACBAND_TEST_FLAG", "on"}};
    dir.write("check.sh", "[ \"$ACBAND_TEST_FLAG\" = on ] && [ \"$1\" = y ]\n");
    const std::vector<ConfigId> g{ConfigId(0), ConfigId(1)};
    const GroupOutcome o = run_external(spec, g, InstanceId(0));
    ASSERT_TRUE(o.winner);
    EXPECT_EQ(*o.winner, ConfigId(1));
}

TEST(ExternalOracle, SingleRuns) {
    ExternalRunnerSpec spec;
    spec.command = "sleep {config} {instance}";
    spec.configs = {"0.05"};
    spec.instances = {"0"};
    const ExternalOracle oracle(spec);
    EXPECT_EQ(oracle.n_configs(), 1u);
    EXPECT_NEAR(oracle.evaluate_single(ConfigId(0), InstanceId(0)), 0.05, 0.1);
}
