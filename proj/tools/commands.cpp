#include "commands.hpp"

#include <fstream>
#include <memory>
#include <set>

#include <CLI11.hpp>

#include "barrier/central.hpp"
#include "barrier/dmove.hpp"
#include "barrier/harness.hpp"
#include "barrier/io.hpp"
#include "barrier/rmove.hpp"

namespace barrier::cli {

namespace {

struct GenerateArgs {
    std::size_t n = 0;
    double length = 4000.0;
    double width = 60.0;
    double rho = 30.0;
    double comm = 0.0;
    double sigma = 6.0;
    double energy = 100.0;
    std::uint64_t seed = 1;
    std::string out = "-";
};

struct RunArgs {
    std::string deployment;
    std::string scheme;
    std::vector<std::int32_t> fail;
    std::uint64_t seed = 1;
    std::string trace;
    std::string save;
    int k = 0;
    double cost = 1.0;
    double threshold = 10.0;
};

struct SweepArgs {
    std::vector<std::string> schemes{"nmove", "rmove", "cmove", "dmove"};
    std::vector<std::size_t> n_list{140, 160, 180};
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    std::string out = "-";
    std::string detail;
    double length = 4000.0;
    double width = 60.0;
    double rho = 30.0;
    double comm = 0.0;
    double sigma = 6.0;
    double energy = 100.0;
    double cost = 1.0;
    double threshold = 10.0;
    int k = 0;
    double max_failure = 0.30;
    std::size_t redraws = 50;
};

struct GraphArgs {
    std::string deployment;
};

// Writes to a file, or to `fallback` when the path is "-" or empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    ExperimentConfig config;
    config.n = a.n;
    config.length = a.length;
    config.width = a.width;
    config.rho = a.rho;
    if (a.comm > 0.0) config.comm = a.comm;
    config.sigma = a.sigma;
    config.initial_energy = a.energy;
    config.validate();
    Rng rng = seeded_rng(a.seed);
    const World world = make_world(config, generate_deployment(config, rng));
    Sink sink(a.out, out);
    sink.get() << deployment_to_json(world).dump(2) << '\n';
    return kOk;
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
    const auto scheme = parse_scheme(a.scheme);
    if (!scheme) {
        err << "unknown scheme '" << a.scheme << "'\n";
        return kUsage;
    }
    World world = load_deployment(a.deployment, EnergyModel{a.cost, a.threshold});
    std::set<SensorId> failed;
    for (auto v : a.fail) {
        const SensorId id = sensor_id(v);
        if (!world.contains(id)) {
            err << "no sensor with id " << v << '\n';
            return kUsage;
        }
        failed.insert(id);
    }
    if ((*scheme == Scheme::DMove || *scheme == Scheme::RMove) && failed.size() > 1) {
        err << to_string(*scheme) << " handles one failure at a time; got " << failed.size() << '\n';
        return kSequentialOnly;
    }

    world.barrier = find_barrier(build_intersection_graph(world));
    if (!world.barrier) {
        err << "deployment has no initial barrier\n";
        return kNoInitialBarrier;
    }
    const Barrier initial = *world.barrier;

    MessageBus bus;
    bus.set_tracing(!a.trace.empty());
    NodeStates states;
    if (*scheme == Scheme::DMove) states = init_recovery_nodes(world, &bus).states;

    for (SensorId id : failed) world.mark_failed(id);
    Rng rng = seeded_rng(a.seed);
    RestoreOutcome outcome;
    switch (*scheme) {
        case Scheme::NMove: outcome = restore_nmove(world, failed); break;
        case Scheme::CMove: outcome = restore_cmove(world, failed); break;
        case Scheme::RMove:
            outcome = failed.empty() ? restore_nmove(world, failed) : restore_rmove(world, *failed.begin(), rng);
            break;
        case Scheme::DMove: {
            const int k = a.k > 0 ? a.k : default_hop_budget(world.sensors.size());
            if (failed.empty()) {
                outcome.success = true;
                outcome.new_barrier = world.barrier;
            } else {
                outcome = handle_failure_dmove(world, states, *failed.begin(), DMoveOptions{k, &bus});
            }
            break;
        }
    }

    nlohmann::json report = outcome_to_json(outcome);
    report["scheme"] = to_string(*scheme);
    report["initial_barrier"] = nlohmann::json::array();
    for (SensorId id : initial) report["initial_barrier"].push_back(to_int(id));
    report["verified"] = outcome.success && verify_barrier(world);
    out << report.dump(2) << '\n';

    if (!a.trace.empty()) {
        Sink sink(a.trace, out);
        bus.write_trace_csv(sink.get());
    }
    if (!a.save.empty()) save_deployment(world, a.save);
    return kOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    config.schemes.clear();
    for (const auto& name : a.schemes) {
        const auto s = parse_scheme(name);
        if (!s) {
            err << "unknown scheme '" << name << "'\n";
            return kUsage;
        }
        config.schemes.push_back(*s);
    }
    config.length = a.length;
    config.width = a.width;
    config.rho = a.rho;
    if (a.comm > 0.0) config.comm = a.comm;
    config.sigma = a.sigma;
    config.initial_energy = a.energy;
    config.cost_per_unit = a.cost;
    config.static_threshold = a.threshold;
    if (a.k > 0) config.hop_budget = a.k;
    config.failure_fraction_max = a.max_failure;
    config.trials = a.trials;
    config.seed = a.seed;
    config.max_redraws = a.redraws;
    if (!a.n_list.empty()) config.n = a.n_list.front();

    std::unique_ptr<Sink> detail;
    if (!a.detail.empty()) detail = std::make_unique<Sink>(a.detail, err);
    const auto rows = run_sweep(config, SweepOptions{a.n_list, a.jobs, detail ? &detail->get() : nullptr});

    Sink sink(a.out, out);
    write_csv_header(sink.get());
    for (const auto& row : rows) write_csv_row(sink.get(), row);
    return kOk;
}

int cmd_graph(const GraphArgs& a, std::ostream& out) {
    const World world = load_deployment(a.deployment);
    out << graph_to_json(build_intersection_graph(world)).dump(2) << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Barrier coverage restoration: deployments, single episodes and experiment sweeps"};
    app.set_config("--config", "", "Optional TOML/INI file with option values; flags override it");
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a line deployment as JSON");
    generate->add_option("--n", gen.n, "Number of sensors")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    generate->add_option("--length", gen.length, "Belt length L")->capture_default_str();
    generate->add_option("--width", gen.width, "Belt width W")->capture_default_str();
    generate->add_option("--rho", gen.rho, "Sensing radius")->capture_default_str();
    generate->add_option("--comm", gen.comm, "Communication radius (default 2*rho)");
    generate->add_option("--sigma", gen.sigma, "Std. deviation of the placement error")->capture_default_str();
    generate->add_option("--energy", gen.energy, "Initial energy per sensor")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    generate->add_option("--out", gen.out, "Output file, '-' for stdout")->capture_default_str();

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Fail sensors in a deployment and restore once");
    run_cmd->add_option("deployment", run_args.deployment, "Deployment JSON file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--scheme", run_args.scheme, "nmove, rmove, cmove or dmove")->required();
    run_cmd->add_option("--fail", run_args.fail, "Comma-separated ids to fail")->delimiter(',');
    run_cmd->add_option("--seed", run_args.seed, "Random seed (rmove direction)")->capture_default_str();
    run_cmd->add_option("--trace", run_args.trace, "Write the protocol message trace (CSV) here");
    run_cmd->add_option("--save", run_args.save, "Write the resulting deployment here");
    run_cmd->add_option("--k", run_args.k, "Token search hop budget (default floor(N/20), min 2)");
    run_cmd->add_option("--cost", run_args.cost, "Energy per unit displacement")->capture_default_str();
    run_cmd->add_option("--threshold", run_args.threshold, "Energy below which a sensor turns static")->capture_default_str();

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Run the failure experiment and print CSV");
    sweep->add_option("--schemes", sw.schemes, "Schemes to run")->delimiter(',')->capture_default_str();
    sweep->add_option("--n-list", sw.n_list, "Sensor counts")->delimiter(',')->capture_default_str();
    sweep->add_option("--trials", sw.trials, "Trials per (scheme, N)")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sw.seed, "Master seed")->capture_default_str();
    sweep->add_option("--jobs", sw.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--out", sw.out, "CSV output file, '-' for stdout")->capture_default_str();
    sweep->add_option("--detail", sw.detail, "Per-episode JSON-lines log file");
    sweep->add_option("--length", sw.length, "Belt length L")->capture_default_str();
    sweep->add_option("--width", sw.width, "Belt width W")->capture_default_str();
    sweep->add_option("--rho", sw.rho, "Sensing radius")->capture_default_str();
    sweep->add_option("--comm", sw.comm, "Communication radius (default 2*rho)");
    sweep->add_option("--sigma", sw.sigma, "Std. deviation of the placement error")->capture_default_str();
    sweep->add_option("--energy", sw.energy, "Initial energy per sensor")->capture_default_str();
    sweep->add_option("--cost", sw.cost, "Energy per unit displacement")->capture_default_str();
    sweep->add_option("--threshold", sw.threshold, "Static threshold")->capture_default_str();
    sweep->add_option("--k", sw.k, "Token search hop budget (default floor(N/20), min 2)");
    sweep->add_option("--max-failure", sw.max_failure, "Fraction of sensors failed per trial")->capture_default_str();
    sweep->add_option("--redraws", sw.redraws, "Deployment draws allowed to find an initial barrier")->capture_default_str();

    GraphArgs graph_args;
    auto* graph = app.add_subcommand("graph", "Dump the intersection graph of a deployment as JSON");
    graph->add_option("deployment", graph_args.deployment, "Deployment JSON file")->required()->check(CLI::ExistingFile);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*generate) return cmd_generate(gen, out);
        if (*run_cmd) return cmd_run(run_args, out, err);
        if (*sweep) return cmd_sweep(sw, out, err);
        if (*graph) return cmd_graph(graph_args, out);
    } catch (const InvalidConfig& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    return kUsage;
}

}  // namespace barrier::cli
