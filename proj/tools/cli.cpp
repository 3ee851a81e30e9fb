#include "cli.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "acband/acband.hpp"
#include "acband/hyperband.hpp"
#include "acband/metrics.hpp"
#include "acband/schedule.hpp"
#include "acband/serialize.hpp"
#include "acband/synthetic.hpp"
#include "json.hpp"
#include "scenario.hpp"

namespace acband::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open " + p.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        err << "acband: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "acband: IoError: " << e.what() << '\n';
        return kExitData;
    }
}

/// Owns whatever backs the oracle of one scenario.
struct LoadedScenario {
    std::unique_ptr<RuntimeMatrix> matrix;
    std::unique_ptr<CostOracle> oracle;
};

LoadedScenario load(const Scenario& sc) {
    LoadedScenario out;
    if (const auto* d = std::get_if<DatasetSource>(&sc.source)) {
        out.matrix = std::make_unique<RuntimeMatrix>(load_runtime_matrix(d->path, d->format));
    } else if (const auto* e = std::get_if<ExponentialSource>(&sc.source)) {
        out.matrix = std::make_unique<RuntimeMatrix>(generate_exponential_scenario(e->spec).matrix);
    } else if (const auto* h = std::get_if<HeavyTailSource>(&sc.source)) {
        out.matrix = std::make_unique<RuntimeMatrix>(generate_heavy_tailed_matrix(h->spec));
    } else {
        out.oracle = std::make_unique<ExternalOracle>(std::get<ExternalRunnerSpec>(sc.source));
        return out;
    }
    out.oracle = std::make_unique<MatrixOracle>(*out.matrix);
    return out;
}

struct SeedRow {
    std::uint64_t seed = 0;
    std::uint32_t winner = 0;
    double cpu_time = 0.0;
    double wall_clock = 0.0;
    double gap_to_best = std::nan("");
    double gap_to_subset_best = std::nan("");
    double r_delta = std::nan("");
    std::size_t sampled = 0;
};

struct SeedOutput {
    SeedRow row;
    std::string result;
    std::string trace;
};

SeedOutput run_seed(const Scenario& sc, const LoadedScenario& loaded, std::uint64_t seed, bool want_trace) {
    RunResult r;
    if (sc.method == Method::ACBand) {
        ACBandParams p = sc.acband;
        p.seed = seed;
        r = run_acband(p, *loaded.oracle, sc.statistic);
    } else {
        HyperbandParams p = sc.hyperband;
        p.seed = seed;
        r = run_hyperband(p, *loaded.oracle);
    }
    SeedOutput out;
    out.row.seed = seed;
    out.row.winner = r.winner.value;
    out.row.cpu_time = r.ledger.total_seconds();
    out.row.wall_clock = r.wall_clock_proxy();
    out.row.sampled = r.sampled.size();
    if (loaded.matrix) {
        const EvalReport e = evaluate_winner(*loaded.matrix, r.winner, r.sampled, sc.delta_m, out.row.cpu_time);
        out.row.gap_to_best = e.gap_to_best;
        out.row.gap_to_subset_best = e.gap_to_subset_best;
        out.row.r_delta = e.r_delta;
    }
    out.result = run_result_json(r);
    if (want_trace) {
        std::ostringstream t;
        write_trace_jsonl(t, r.trace);
        out.trace = t.str();
    }
    return out;
}

std::string aggregate_csv(const std::vector<SeedRow>& rows) {
    std::string out = "seed,winner,cpu_time,wall_clock_proxy,gap_to_best,gap_to_best_percent,gap_to_subset_best,r_delta,configs_sampled\n";
    for (const SeedRow& r : rows)
        out += std::to_string(r.seed) + ',' + std::to_string(r.winner) + ',' + num(r.cpu_time) + ',' + num(r.wall_clock) + ',' +
               num(r.gap_to_best) + ',' + num(100.0 * r.gap_to_best) + ',' + num(r.gap_to_subset_best) + ',' + num(r.r_delta) + ',' +
               std::to_string(r.sampled) + '\n';

    // Sample standard deviation; 0 for a single seed.
    const auto stats = [&](auto field) {
        double mean = 0.0;
        for (const SeedRow& r : rows) mean += field(r);
        mean /= static_cast<double>(rows.size());
        double ss = 0.0;
        for (const SeedRow& r : rows) ss += (field(r) - mean) * (field(r) - mean);
        const double sd = rows.size() > 1 ? std::sqrt(ss / static_cast<double>(rows.size() - 1)) : 0.0;
        return std::pair{mean, sd};
    };
    const auto cpu = stats([](const SeedRow& r) { return r.cpu_time; });
    const auto wall = stats([](const SeedRow& r) { return r.wall_clock; });
    const auto gap = stats([](const SeedRow& r) { return r.gap_to_best; });
    const auto sub = stats([](const SeedRow& r) { return r.gap_to_subset_best; });
    const auto rd = stats([](const SeedRow& r) { return r.r_delta; });
    const auto sampled = stats([](const SeedRow& r) { return static_cast<double>(r.sampled); });
    out += "mean,," + num(cpu.first) + ',' + num(wall.first) + ',' + num(gap.first) + ',' + num(100.0 * gap.first) + ',' +
           num(sub.first) + ',' + num(rd.first) + ',' + num(sampled.first) + '\n';
    out += "stddev,," + num(cpu.second) + ',' + num(wall.second) + ',' + num(gap.second) + ',' + num(100.0 * gap.second) + ',' +
           num(sub.second) + ',' + num(rd.second) + ',' + num(sampled.second) + '\n';
    return out;
}

std::vector<ConfigId> parse_subset(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    std::vector<ConfigId> ids;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            raise(Errc::MalformedFile, path.string() + ": " + e.what());
        }
        const json& list = doc.is_object() ? doc.value("sampled", json()) : doc;
        if (!list.is_array()) raise(Errc::MalformedFile, path.string() + ": expected an id list or a result with 'sampled'");
        for (const json& v : list) {
            if (!v.is_number_unsigned()) raise(Errc::MalformedFile, path.string() + ": ids must be non-negative integers");
            ids.emplace_back(v.get<std::uint32_t>());
        }
        return ids;
    }
    std::istringstream in(text);
    for (std::string tok; in >> tok;) {
        std::uint32_t v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            raise(Errc::MalformedFile, path.string() + ": bad id '" + tok + "'");
        ids.emplace_back(v);
    }
    return ids;
}

void emit(const std::filesystem::path& output, const std::string& content, std::ostream& out) {
    if (output.empty())
        out << content;
    else
        write_file_atomic(output, content);
}

}  // namespace

int exit_code_for(const Error& error) {
    switch (error.category()) {
        case ErrorCategory::Config: return kExitConfig;
        case ErrorCategory::Data: return kExitData;
        case ErrorCategory::Budget: return kExitBudget;
    }
    return kExitConfig;
}

unsigned threads_from_env() {
    const char* v = std::getenv("ACBAND_THREADS");
    if (!v || !*v) return 1;
    unsigned n = 0;
    const auto res = std::from_chars(v, v + std::char_traits<char>::length(v), n);
    return res.ec == std::errc() && n > 0 ? n : 1;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) raise(Errc::IoError, "cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) raise(Errc::IoError, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

int cmd_run(const std::filesystem::path& scenario_path, const RunOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario sc = parse_scenario(scenario_path);
        const LoadedScenario loaded = load(sc);

        std::vector<SeedOutput> results(sc.seeds.size());
        const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, sc.seeds.size()));
        for (std::size_t start = 0; start < sc.seeds.size(); start += workers) {
            std::vector<std::future<SeedOutput>> batch;
            const std::size_t end = std::min(start + workers, sc.seeds.size());
            for (std::size_t i = start; i < end; ++i)
                batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, run_seed, std::cref(sc),
                                           std::cref(loaded), sc.seeds[i], options.trace));
            for (std::size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
        }

        std::vector<SeedRow> rows;
        for (const SeedOutput& r : results) {
            const std::string stem = "seed" + std::to_string(r.row.seed);
            write_file_atomic(sc.output / ("result_" + stem + ".json"), r.result);
            if (options.trace) write_file_atomic(sc.output / ("trace_" + stem + ".jsonl"), r.trace);
            rows.push_back(r.row);
            err << "acband: seed " << r.row.seed << " -> config " << r.row.winner << ", " << num(r.row.cpu_time) << " CPU s\n";
        }
        write_file_atomic(sc.output / "aggregate.csv", aggregate_csv(rows));
        out << (sc.output / "aggregate.csv").string() << '\n';
        return kExitOk;
    });
}

int cmd_budget(const BudgetOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<double> alphas = o.alphas, deltas = o.deltas;
        std::vector<int> ks = o.ks;
        if (o.grid) {
            if (alphas.empty()) alphas = {0.01, 0.02, 0.05, 0.1};
            if (deltas.empty()) deltas = {0.01, 0.05, 0.1};
            if (ks.empty()) ks = {2, 4, 8, 16};
        }
        if (alphas.empty() || deltas.empty() || ks.empty())
            raise(Errc::InvalidArgument, "--alpha, --delta and --k are required unless --grid is given");

        std::vector<BudgetRow> rows;
        if (o.n0) {
            for (int k : ks)
                for (double a : alphas)
                    for (double d : deltas)
                        rows.push_back(BudgetRow{k, a, d, *o.n0, epoch_constants(a, d, *o.n0, k).epochs,
                                                 acband_sufficient_budget(a, d, *o.n0, k, o.gamma_inv)});
        } else {
            rows = budget_curve(ks, alphas, deltas, o.rule, o.gamma_inv);
        }
        std::ostringstream csv;
        write_budget_csv(csv, rows);
        emit(o.output, csv.str(), out);
        return kExitOk;
    });
}

int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (o.output.empty()) raise(Errc::InvalidArgument, "--output prefix is required");
        std::filesystem::path matrix_path = o.output;
        matrix_path += o.format == MatrixFormat::Csv ? ".csv" : ".acbm";
        std::filesystem::path sidecar_path = o.output;
        sidecar_path += ".json";

        std::string sidecar;
        RuntimeMatrix matrix;
        if (o.model == "exponential") {
            ExponentialScenarioSpec spec{o.configs, o.instances, o.alpha, o.epsilon, o.timeout, o.seed};
            SyntheticScenario s = generate_exponential_scenario(spec);
            sidecar = scenario_sidecar_json(s);
            matrix = std::move(s.matrix);
        } else if (o.model == "heavy-tailed") {
            HeavyTailSpec spec{o.configs, o.instances, o.timeout, o.median_runtime, o.config_sigma, o.instance_sigma, o.noise_sigma, o.seed};
            matrix = generate_heavy_tailed_matrix(spec);
            json j;
            j["model"] = "heavy-tailed";
            j["seed"] = o.seed;
            j["n_configs"] = o.configs;
            j["n_instances"] = o.instances;
            j["timeout"] = o.timeout;
            sidecar = j.dump(2) + "\n";
        } else {
            raise(Errc::InvalidArgument, "--model must be exponential or heavy-tailed");
        }

        // Save through a temporary name so readers never see a partial matrix.
        std::filesystem::path tmp = matrix_path;
        tmp += ".tmp." + std::to_string(::getpid());
        if (matrix_path.has_parent_path()) std::filesystem::create_directories(matrix_path.parent_path());
        save_runtime_matrix(matrix, tmp, o.format);
        std::filesystem::rename(tmp, matrix_path);
        write_file_atomic(sidecar_path, sidecar);
        out << matrix_path.string() << '\n' << sidecar_path.string() << '\n';
        return kExitOk;
    });
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (o.matrix.empty()) raise(Errc::InvalidArgument, "--matrix is required");
        const RuntimeMatrix m = load_runtime_matrix(o.matrix, matrix_format_from_path(o.matrix));

        std::optional<std::uint32_t> winner = o.winner;
        std::vector<ConfigId> subset;
        double cpu = o.cpu_time.value_or(0.0);
        if (!o.result.empty()) {
            json doc;
            try {
                doc = json::parse(read_text(o.result));
            } catch (const json::parse_error& e) {
                raise(Errc::MalformedFile, o.result.string() + ": " + e.what());
            }
            if (!doc.contains("winner") || !doc.contains("sampled") || !doc.contains("cpu_seconds"))
                raise(Errc::MalformedFile, o.result.string() + ": not a run result");
            if (!winner) winner = doc["winner"].get<std::uint32_t>();
            if (!o.cpu_time) cpu = doc["cpu_seconds"].get<double>();
            for (const json& v : doc["sampled"]) subset.emplace_back(v.get<std::uint32_t>());
        }
        if (!o.subset.empty()) subset = parse_subset(o.subset);
        if (!winner) raise(Errc::InvalidArgument, "--winner or --result is required");
        if (subset.empty()) subset.emplace_back(*winner);

        const EvalReport report = evaluate_winner(m, ConfigId(*winner), subset, o.delta_m, cpu);
        if (o.format == "json")
            emit(o.output, eval_report_json(report), out);
        else if (o.format == "csv")
            emit(o.output, eval_report_csv(report), out);
        else
            raise(Errc::InvalidArgument, "--format must be json or csv");
        return kExitOk;
    });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"AC-Band algorithm configuration"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "acband 0.1.0");

    std::string scenario;
    RunOptions run_opts;
    bool no_trace = false;
    auto* run = app.add_subcommand("run", "Run a scenario for every listed seed");
    run->add_option("scenario", scenario, "Scenario JSON file")->required();
    run->add_flag("--no-trace", no_trace, "Skip the JSON-lines trace files");

    BudgetOptions budget;
    std::string rule = "double";
    auto* bud = app.add_subcommand("budget", "Sufficient AC-Band budget (gamma_inv scaled)");
    bud->add_option("--alpha", budget.alphas, "Proportion(s) of epsilon-best configurations")->delimiter(',');
    bud->add_option("--delta", budget.deltas, "Failure probability(ies)")->delimiter(',');
    bud->add_option("--k", budget.ks, "Group size(s)")->delimiter(',');
    bud->add_option("--n0", budget.n0, "Initial sample size, in (N, 2N]");
    bud->add_option("--n0-rule", rule, "n0 when --n0 is absent: double, one-and-half, plus-one")
        ->check(CLI::IsMember({"double", "one-and-half", "plus-one"}));
    bud->add_option("--gamma-inv", budget.gamma_inv, "Convergence envelope constant");
    bud->add_flag("--grid", budget.grid, "Fill missing axes with the standard grid");
    bud->add_option("--output", budget.output, "CSV file (default stdout)");

    GenOptions gen;
    std::string gen_format = "csv";
    auto* g = app.add_subcommand("gen", "Generate a synthetic scenario");
    g->add_option("--model", gen.model, "exponential or heavy-tailed");
    g->add_option("--configs", gen.configs, "Number of configurations")->required();
    g->add_option("--instances", gen.instances, "Number of instances")->required();
    g->add_option("--alpha", gen.alpha, "Target epsilon-best proportion (exponential)");
    g->add_option("--epsilon", gen.epsilon, "Epsilon (exponential)");
    g->add_option("--timeout", gen.timeout, "Timeout in seconds");
    g->add_option("--median-runtime", gen.median_runtime, "Median runtime (heavy-tailed)");
    g->add_option("--config-sigma", gen.config_sigma, "Log-spread across configurations (heavy-tailed)");
    g->add_option("--instance-sigma", gen.instance_sigma, "Log-spread across instances (heavy-tailed)");
    g->add_option("--noise-sigma", gen.noise_sigma, "Log-noise per run (heavy-tailed)");
    g->add_option("--seed", gen.seed, "Seed");
    g->add_option("--format", gen_format, "csv or binary")->check(CLI::IsMember({"csv", "binary"}));
    g->add_option("--output", gen.output, "Output path prefix")->required();

    EvalOptions ev;
    std::uint32_t winner = 0;
    double cpu_time = 0.0;
    auto* e = app.add_subcommand("eval", "Evaluate a returned configuration against a matrix");
    e->add_option("--matrix", ev.matrix, "Runtime matrix (.csv or binary)")->required();
    e->add_option("--result", ev.result, "Run result JSON supplying winner, subset and CPU time");
    auto* winner_opt = e->add_option("--winner", winner, "Configuration id");
    e->add_option("--subset", ev.subset, "Sampled configurations: JSON list, result JSON or plain ids");
    e->add_option("--delta-m", ev.delta_m, "R^delta cut-off")->check(CLI::Range(0.0, 0.999999));
    auto* cpu_opt = e->add_option("--cpu-time", cpu_time, "CPU seconds to report");
    e->add_option("--format", ev.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    e->add_option("--output", ev.output, "Report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << "acband 0.1.0\n";
        return kExitOk;
    } catch (const CLI::ParseError& pe) {
        for (CLI::App* sub : app.get_subcommands()) {
            if (pe.get_name() == "CallForHelp") {
                out << sub->help();
                return kExitOk;
            }
        }
        err << "acband: " << pe.what() << '\n';
        return kExitConfig;
    }

    if (run->parsed()) {
        run_opts.threads = threads_from_env();
        run_opts.trace = !no_trace;
        return cmd_run(scenario, run_opts, out, err);
    }
    if (bud->parsed()) {
        budget.rule = rule == "plus-one" ? N0Rule::PlusOne : rule == "one-and-half" ? N0Rule::OneAndHalf : N0Rule::Double;
        return cmd_budget(budget, out, err);
    }
    if (g->parsed()) {
        gen.format = gen_format == "binary" ? MatrixFormat::Binary : MatrixFormat::Csv;
        return cmd_gen(gen, out, err);
    }
    if (*winner_opt) ev.winner = winner;
    if (*cpu_opt) ev.cpu_time = cpu_time;
    return cmd_eval(ev, out, err);
}

}  // namespace acband::cli
