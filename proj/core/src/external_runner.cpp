#include "acband/external_runner.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <set>
#include <sstream>
#include <thread>

#include "acband/error.hpp"

extern char** environ;

namespace acband {

namespace {

constexpr std::string_view kInstance = "{instance}";
constexpr std::string_view kConfig = "{config}";

std::vector<std::string> split_ws(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::size_t count_occurrences(const std::string& text, std::string_view needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
    return n;
}

struct Child {
    ConfigId config;
    pid_t pid = -1;
    bool running = false;
};

void kill_group(Child& child) {
    if (!child.running) return;
    ::kill(-child.pid, SIGKILL);
    int status = 0;
    while (::waitpid(child.pid, &status, 0) < 0 && errno == EINTR) {
    }
    child.running = false;
}

class SpawnResources {
public:
    SpawnResources() {
        ::posix_spawn_file_actions_init(&actions);
        ::posix_spawnattr_init(&attr);
    }
    ~SpawnResources() {
        ::posix_spawn_file_actions_destroy(&actions);
        ::posix_spawnattr_destroy(&attr);
    }
    SpawnResources(const SpawnResources&) = delete;
    SpawnResources& operator=(const SpawnResources&) = delete;

    posix_spawn_file_actions_t actions;
    posix_spawnattr_t attr;
};

std::vector<std::string> build_environment(const std::map<std::string, std::string>& additions) {
    std::vector<std::string> env;
    for (char** e = environ; e && *e; ++e) {
        std::string entry(*e);
        const std::string key = entry.substr(0, entry.find('='));
        if (!additions.contains(key)) env.push_back(std::move(entry));
    }
    for (const auto& [key, value] : additions) env.push_back(key + "=" + value);
    return env;
}

std::vector<char*> c_strings(std::vector<std::string>& items) {
    std::vector<char*> out;
    out.reserve(items.size() + 1);
    for (std::string& s : items) out.push_back(s.data());
    out.push_back(nullptr);
    return out;
}

}  // namespace

void validate_runner_spec(const ExternalRunnerSpec& spec) {
    const std::size_t placeholders = count_occurrences(spec.command, kInstance);
    if (placeholders != 1)
        raise(Errc::InvalidArgument, "command template must contain exactly one {instance} placeholder, found " +
                                         std::to_string(placeholders));
    if (split_ws(spec.command).empty()) raise(Errc::InvalidArgument, "empty command template");
    if (!(spec.timeout > 0.0)) raise(Errc::DomainError, "runner timeout must be positive");
}

std::vector<std::string> expand_command(const ExternalRunnerSpec& spec, ConfigId config, InstanceId instance) {
    if (config.index() >= spec.configs.size()) raise(Errc::IndexOutOfRange, "config " + std::to_string(config.value) + " has no arguments");
    if (instance.index() >= spec.instances.size())
        raise(Errc::IndexOutOfRange, "instance " + std::to_string(instance.value) + " has no path");
    std::vector<std::string> argv;
    for (std::string tok : split_ws(spec.command)) {
        if (tok == kConfig) {
            for (std::string& arg : split_ws(spec.configs[config.index()])) argv.push_back(std::move(arg));
            continue;
        }
        if (const auto pos = tok.find(kInstance); pos != std::string::npos) tok.replace(pos, kInstance.size(), spec.instances[instance.index()]);
        argv.push_back(std::move(tok));
    }
    return argv;
}

GroupOutcome run_external(const ExternalRunnerSpec& spec, std::span<const ConfigId> group, InstanceId instance) {
    validate_runner_spec(spec);
    if (group.empty()) raise(Errc::InvalidArgument, "empty group");
    if (std::set<ConfigId>(group.begin(), group.end()).size() != group.size())
        raise(Errc::InvalidArgument, "group members must be distinct");

    std::vector<std::vector<std::string>> argvs;
    for (ConfigId c : group) argvs.push_back(expand_command(spec, c, instance));
    std::vector<std::string> env = build_environment(spec.environment);
    std::vector<char*> envp = c_strings(env);

    SpawnResources res;
    ::posix_spawn_file_actions_addopen(&res.actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);
    if (!spec.working_directory.empty())
        ::posix_spawn_file_actions_addchdir_np(&res.actions, spec.working_directory.c_str());
    ::posix_spawnattr_setflags(&res.attr, POSIX_SPAWN_SETPGROUP);
    ::posix_spawnattr_setpgroup(&res.attr, 0);

    std::vector<Child> children;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < group.size(); ++i) {
        std::vector<char*> argv = c_strings(argvs[i]);
        pid_t pid = -1;
        const int rc = ::posix_spawnp(&pid, argv[0], &res.actions, &res.attr, argv.data(), envp.data());
        if (rc != 0) {
            for (Child& c : children) kill_group(c);
            raise(Errc::SpawnFailure, "cannot start '" + argvs[i][0] + "': " + std::strerror(rc));
        }
        children.push_back(Child{group[i], pid, true});
    }

    GroupOutcome outcome;
    outcome.instance = instance;
    outcome.participants.assign(group.begin(), group.end());

    const auto deadline = start + std::chrono::duration<double>(spec.timeout);
    std::size_t alive = children.size();
    while (alive > 0 && !outcome.winner) {
        bool progressed = false;
        for (Child& child : children) {
            if (!child.running) continue;
            int status = 0;
            const pid_t r = ::waitpid(child.pid, &status, WNOHANG);
            if (r != child.pid) continue;
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            child.running = false;
            --alive;
            progressed = true;
            ::kill(-child.pid, SIGKILL);  // stray grandchildren
            const bool ok = WIFEXITED(status) && WEXITSTATUS(status) == 0;
            if (ok && elapsed < spec.timeout) {
                outcome.winner = child.config;
                outcome.winner_runtime = elapsed;
                break;
            }
            if (!ok && !spec.nonzero_exit_as_timeout) {
                for (Child& c : children) kill_group(c);
                raise(Errc::NonZeroExit, "config " + std::to_string(child.config.value) + " failed on instance " +
                                             std::to_string(instance.value));
            }
        }
        if (outcome.winner) break;
        if (std::chrono::steady_clock::now() >= deadline) break;
        if (!progressed) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    for (Child& c : children) kill_group(c);

    outcome.finish_time = outcome.winner ? *outcome.winner_runtime : spec.timeout;
    outcome.cpu_charge = static_cast<double>(group.size()) * outcome.finish_time;
    return outcome;
}

ExternalOracle::ExternalOracle(ExternalRunnerSpec spec) : spec_(std::move(spec)) { validate_runner_spec(spec_); }

GroupOutcome ExternalOracle::evaluate_group(std::span<const ConfigId> group, InstanceId instance, SeededRng&) const {
    if (group.size() < 2) raise(Errc::InvalidArgument, "a group needs at least two configurations");
    return run_external(spec_, group, instance);
}

double ExternalOracle::evaluate_single(ConfigId config, InstanceId instance) const {
    const ConfigId one[] = {config};
    return run_external(spec_, one, instance).finish_time;
}

}  // namespace acband
