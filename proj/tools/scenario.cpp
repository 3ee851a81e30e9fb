#include "scenario.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include "acband/error.hpp"
#include "json.hpp"

namespace acband::cli {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) raise(Errc::InvalidArgument, where + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key)) raise(Errc::InvalidArgument, where + ": unknown key '" + key + "'");
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) raise(Errc::InvalidArgument, where + ": missing '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        raise(Errc::InvalidArgument, where + ": '" + key + "' has the wrong type");
    }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
    return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

ScenarioSource parse_synthetic(const json& s) {
    const std::string model = get_or<std::string>(s, "model", "exponential", "synthetic");
    if (model == "exponential") {
        only_keys(s, {"model", "configs", "instances", "alpha", "epsilon", "timeout", "seed"}, "synthetic");
        ExponentialScenarioSpec spec;
        spec.n_configs = get<std::size_t>(s, "configs", "synthetic");
        spec.n_instances = get<std::size_t>(s, "instances", "synthetic");
        spec.target_alpha = get<double>(s, "alpha", "synthetic");
        spec.epsilon = get<double>(s, "epsilon", "synthetic");
        spec.timeout = get_or<double>(s, "timeout", 900.0, "synthetic");
        spec.seed = get_or<std::uint64_t>(s, "seed", 0, "synthetic");
        return ExponentialSource{spec};
    }
    if (model == "heavy-tailed") {
        only_keys(s, {"model", "configs", "instances", "timeout", "median_runtime", "config_sigma", "instance_sigma", "noise_sigma", "seed"},
                  "synthetic");
        HeavyTailSpec spec;
        spec.n_configs = get<std::size_t>(s, "configs", "synthetic");
        spec.n_instances = get<std::size_t>(s, "instances", "synthetic");
        spec.timeout = get_or<double>(s, "timeout", spec.timeout, "synthetic");
        spec.median_runtime = get_or<double>(s, "median_runtime", spec.median_runtime, "synthetic");
        spec.config_sigma = get_or<double>(s, "config_sigma", spec.config_sigma, "synthetic");
        spec.instance_sigma = get_or<double>(s, "instance_sigma", spec.instance_sigma, "synthetic");
        spec.noise_sigma = get_or<double>(s, "noise_sigma", spec.noise_sigma, "synthetic");
        spec.seed = get_or<std::uint64_t>(s, "seed", 0, "synthetic");
        return HeavyTailSource{spec};
    }
    raise(Errc::InvalidArgument, "synthetic: unknown model '" + model + "' (expected exponential or heavy-tailed)");
}

ScenarioSource parse_external(const json& e, const std::filesystem::path& base) {
    only_keys(e, {"command", "configs", "instances", "timeout", "working_directory", "environment", "nonzero_exit_as_timeout"},
              "external");
    ExternalRunnerSpec spec;
    spec.command = get<std::string>(e, "command", "external");
    spec.configs = get<std::vector<std::string>>(e, "configs", "external");
    for (const std::string& p : get<std::vector<std::string>>(e, "instances", "external")) spec.instances.push_back(resolve(base, p).string());
    spec.timeout = get_or<double>(e, "timeout", spec.timeout, "external");
    if (e.contains("working_directory")) spec.working_directory = resolve(base, get<std::string>(e, "working_directory", "external"));
    spec.environment = get_or<std::map<std::string, std::string>>(e, "environment", {}, "external");
    spec.nonzero_exit_as_timeout = get_or<bool>(e, "nonzero_exit_as_timeout", true, "external");
    validate_runner_spec(spec);
    return spec;
}

}  // namespace

Scenario parse_scenario(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open scenario " + file.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario_text(text, file.parent_path());
}

Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(Errc::InvalidArgument, std::string("scenario is not valid JSON: ") + e.what());
    }
    only_keys(doc, {"dataset", "synthetic", "external", "method", "params", "seeds", "output"}, "scenario");

    Scenario sc;
    const int sources = static_cast<int>(doc.contains("dataset")) + static_cast<int>(doc.contains("synthetic")) +
                        static_cast<int>(doc.contains("external"));
    if (sources != 1) raise(Errc::InvalidArgument, "scenario needs exactly one of dataset, synthetic, external");
    if (doc.contains("dataset")) {
        const json& d = doc["dataset"];
        only_keys(d, {"path", "format"}, "dataset");
        DatasetSource ds;
        ds.path = resolve(base, get<std::string>(d, "path", "dataset"));
        const std::string fmt = get_or<std::string>(d, "format", "", "dataset");
        if (fmt.empty())
            ds.format = matrix_format_from_path(ds.path);
        else if (fmt == "csv")
            ds.format = MatrixFormat::Csv;
        else if (fmt == "binary")
            ds.format = MatrixFormat::Binary;
        else
            raise(Errc::InvalidArgument, "dataset: format must be csv or binary");
        sc.source = ds;
    } else if (doc.contains("synthetic")) {
        sc.source = parse_synthetic(doc["synthetic"]);
    } else {
        sc.source = parse_external(doc["external"], base);
    }

    const std::string method = get<std::string>(doc, "method", "scenario");
    const json params = doc.value("params", json::object());
    if (method == "acband") {
        sc.method = Method::ACBand;
        only_keys(params, {"k", "alpha", "delta", "epsilon", "n0", "budget", "statistic", "delta_m"}, "params");
        sc.acband.k = get<int>(params, "k", "params");
        sc.acband.alpha = get<double>(params, "alpha", "params");
        sc.acband.delta = get<double>(params, "delta", "params");
        sc.acband.epsilon = get_or<double>(params, "epsilon", sc.acband.epsilon, "params");
        if (params.contains("n0")) sc.acband.n0 = get<std::int64_t>(params, "n0", "params");
        if (params.contains("budget")) sc.acband.budget = get<std::int64_t>(params, "budget", "params");
        const std::string stat = get_or<std::string>(params, "statistic", "win-frequency", "params");
        if (stat == "win-frequency")
            sc.statistic = StatisticKind::WinFrequency;
        else if (stat == "neg-mean-runtime")
            sc.statistic = StatisticKind::NegMeanRuntime;
        else
            raise(Errc::InvalidArgument, "params: statistic must be win-frequency or neg-mean-runtime");
    } else if (method == "hyperband") {
        sc.method = Method::Hyperband;
        only_keys(params, {"eta", "n_max", "budget", "delta_m", "epsilon"}, "params");
        sc.hyperband.eta = get<int>(params, "eta", "params");
        sc.hyperband.n_max = get_or<std::int64_t>(params, "n_max", 0, "params");
        sc.hyperband.budget = get_or<std::int64_t>(params, "budget", 0, "params");
    } else {
        raise(Errc::InvalidArgument, "method must be acband or hyperband, got '" + method + "'");
    }
    sc.delta_m = get_or<double>(params, "delta_m", 0.1, "params");
    if (!(sc.delta_m >= 0.0 && sc.delta_m < 1.0)) raise(Errc::InvalidArgument, "params: delta_m must lie in [0, 1)");

    sc.seeds = get<std::vector<std::uint64_t>>(doc, "seeds", "scenario");
    if (sc.seeds.empty()) raise(Errc::InvalidArgument, "scenario: seeds must be a non-empty list");
    if (std::set<std::uint64_t>(sc.seeds.begin(), sc.seeds.end()).size() != sc.seeds.size())
        raise(Errc::InvalidArgument, "scenario: seeds must be distinct");
    sc.output = resolve(base, get<std::string>(doc, "output", "scenario"));
    return sc;
}

}  // namespace acband::cli
