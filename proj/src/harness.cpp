#include "barrier/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "barrier/central.hpp"
#include "barrier/dmove.hpp"
#include "barrier/graph.hpp"
#include "barrier/rmove.hpp"

namespace barrier {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::NMove: return "nmove";
        case Scheme::RMove: return "rmove";
        case Scheme::CMove: return "cmove";
        case Scheme::DMove: return "dmove";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    lower.erase(std::remove(lower.begin(), lower.end(), '-'), lower.end());
    for (Scheme s : {Scheme::NMove, Scheme::RMove, Scheme::CMove, Scheme::DMove}) {
        if (lower == to_string(s)) return s;
    }
    return std::nullopt;
}

int ExperimentConfig::k() const { return hop_budget.value_or(default_hop_budget(n)); }

void ExperimentConfig::validate() const {
    if (n < 2) throw InvalidConfig("N must be at least 2");
    if (!(length > 0.0) || !(width > 0.0)) throw InvalidConfig("region dimensions must be positive");
    if (!(rho > 0.0)) throw InvalidConfig("sensing radius must be positive");
    if (comm_radius() < 2.0 * rho) throw InvalidConfig("communication radius must be at least 2 * rho");
    if (!(sigma >= 0.0)) throw InvalidConfig("sigma must be non-negative");
    if (!(cost_per_unit > 0.0)) throw InvalidConfig("cost per unit must be positive");
    if (!(static_threshold >= 0.0)) throw InvalidConfig("static threshold must be non-negative");
    if (!(failure_fraction_max > 0.0 && failure_fraction_max <= 1.0)) {
        throw InvalidConfig("failure fraction must lie in (0, 1]");
    }
    if (!std::is_sorted(report_points.begin(), report_points.end())) {
        throw InvalidConfig("report points must be sorted ascending");
    }
    if (k() < 1) throw InvalidConfig("hop budget must be at least 1");
    if (trials < 1) throw InvalidConfig("at least one trial is required");
}

std::vector<Sensor> generate_deployment(const ExperimentConfig& config, Rng& rng) {
    const double spacing = config.length / static_cast<double>(config.n - 1);
    std::vector<Sensor> sensors;
    sensors.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        Sensor s;
        s.id = sensor_id(static_cast<std::int32_t>(i));
        const double x = static_cast<double>(i) * spacing + config.sigma * rng.gaussian(0.0, 1.0);
        const double y = config.width / 2.0 + config.sigma * rng.gaussian(0.0, 1.0);
        s.pos = Point{x, std::clamp(y, 0.0, config.width)};
        s.sensing_radius = config.rho;
        s.comm_radius = config.comm_radius();
        s.energy = config.initial_energy;
        s.initial_energy = config.initial_energy;
        sensors.push_back(s);
    }
    return sensors;
}

World make_world(const ExperimentConfig& config, std::vector<Sensor> sensors) {
    World world;
    world.region = Region{config.length, config.width};
    world.energy_model = EnergyModel{config.cost_per_unit, config.static_threshold};
    for (auto& s : sensors) world.sensors.emplace(s.id, s);
    return world;
}

std::vector<std::size_t> report_counts(const ExperimentConfig& config) {
    std::vector<std::size_t> counts;
    for (double p : config.report_points) {
        const auto c = static_cast<std::size_t>(std::floor(p * static_cast<double>(config.n) + 1e-9));
        counts.push_back(std::max<std::size_t>(1, c));
    }
    return counts;
}

MetricsRow compute_metrics(const TrialLog& log) {
    MetricsRow row;
    if (log.failures > 0) {
        const double x = static_cast<double>(log.failures);
        row.recovery_rate = 100.0 * static_cast<double>(log.recoveries) / x;
        row.avg_total_displacement = log.displacement / x;
    }
    if (log.deployed > 0) {
        row.high_energy_pct = 100.0 * static_cast<double>(log.high_energy) / static_cast<double>(log.deployed);
    }
    return row;
}

std::size_t count_high_energy(const World& world) {
    std::size_t count = 0;
    for (const auto& [id, s] : world.sensors) {
        if (s.active() && s.energy > 0.9 * s.initial_energy) ++count;
    }
    return count;
}

TrialResult run_trial(Scheme scheme, const ExperimentConfig& config, std::uint64_t seed) {
    config.validate();
    Rng deploy_rng(derive_seed(seed, 1));
    Rng failure_rng(derive_seed(seed, 2));
    Rng scheme_rng(derive_seed(seed, 3));

    TrialResult result;
    World world;
    for (;;) {
        world = make_world(config, generate_deployment(config, deploy_rng));
        world.barrier = find_barrier(build_intersection_graph(world));
        if (world.barrier) break;
        if (++result.redraws >= config.max_redraws) {
            throw InitialBarrierImpossible("no initial barrier after " + std::to_string(result.redraws) + " draws");
        }
    }

    NodeStates states;
    if (scheme == Scheme::DMove) states = init_recovery_nodes(world).states;
    const DMoveOptions dmove{config.k(), nullptr};

    const auto counts = report_counts(config);
    const auto total = static_cast<std::size_t>(
        std::floor(config.failure_fraction_max * static_cast<double>(config.n) + 1e-9));

    TrialLog log;
    log.deployed = config.n;
    for (std::size_t e = 1; e <= total; ++e) {
        const auto alive = world.active_ids();
        if (alive.empty()) break;
        const SensorId victim = alive[failure_rng.below(alive.size())];
        world.mark_failed(victim);

        Episode ep;
        ep.index = e;
        ep.failed = victim;
        ep.barrier_was_up = world.barrier.has_value();
        if (world.barrier) {
            ep.on_barrier = std::find(world.barrier->begin(), world.barrier->end(), victim) != world.barrier->end();
            RestoreOutcome out;
            switch (scheme) {
                case Scheme::NMove: out = restore_nmove(world, {victim}); break;
                case Scheme::CMove: out = restore_cmove(world, {victim}); break;
                case Scheme::RMove: out = restore_rmove(world, victim, scheme_rng); break;
                case Scheme::DMove: out = handle_failure_dmove(world, states, victim, dmove); break;
            }
            ep.mechanism = out.mechanism;
            ep.displacement = out.total_displacement;
            ep.recovered = out.success;
            if (!out.success) world.barrier.reset();
        } else if (auto found = find_barrier(build_intersection_graph(world))) {
            // The survivors happen to form a barrier again.
            world.barrier = found;
            ep.recovered = true;
            ep.mechanism = Mechanism::AlternatePath;
            if (scheme == Scheme::DMove) states = init_recovery_nodes(world).states;
        }

        ++log.failures;
        if (ep.recovered) ++log.recoveries;
        log.displacement += ep.displacement;
        result.total_displacement += ep.displacement;
        result.episodes.push_back(ep);

        for (std::size_t r = 0; r < counts.size(); ++r) {
            if (counts[r] != e) continue;
            log.high_energy = count_high_energy(world);
            MetricsRow row = compute_metrics(log);
            row.scheme = to_string(scheme);
            row.n = config.n;
            row.failure_pct = 100.0 * config.report_points[r];
            result.rows.push_back(row);
        }
    }
    result.total_energy_spent = world.total_energy_spent();
    return result;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) {
    return derive_seed(derive_seed(master, n), trial);
}

namespace {

struct Task {
    Scheme scheme;
    std::size_t n;
    std::size_t trial;
};

void write_episode(std::ostream& os, const Task& task, const Episode& ep) {
    nlohmann::json j{
        {"scheme", to_string(task.scheme)},
        {"N", task.n},
        {"trial", task.trial},
        {"episode", ep.index},
        {"failed", to_int(ep.failed)},
        {"barrier_was_up", ep.barrier_was_up},
        {"on_barrier", ep.on_barrier},
        {"mechanism", std::string(to_string(ep.mechanism))},
        {"recovered", ep.recovered},
        {"displacement", ep.displacement},
    };
    os << j.dump() << '\n';
}

}  // namespace

std::vector<MetricsRow> run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
    const std::vector<std::size_t> ns = options.n_list.empty() ? std::vector<std::size_t>{config.n} : options.n_list;
    std::vector<Task> tasks;
    for (Scheme s : config.schemes) {
        for (std::size_t n : ns) {
            for (std::size_t t = 0; t < config.trials; ++t) tasks.push_back({s, n, t});
        }
    }
    for (std::size_t n : ns) {
        ExperimentConfig c = config;
        c.n = n;
        c.validate();
    }

    std::vector<TrialResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                ExperimentConfig c = config;
                c.n = tasks[i].n;
                results[i] = run_trial(tasks[i].scheme, c, trial_seed(config.seed, c.n, tasks[i].trial));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, tasks.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    if (options.detail) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            for (const auto& ep : results[i].episodes) write_episode(*options.detail, tasks[i], ep);
        }
    }

    std::vector<MetricsRow> rows;
    for (std::size_t begin = 0; begin < tasks.size(); begin += config.trials) {
        const std::size_t end = begin + config.trials;
        const auto& first = results[begin].rows;
        for (std::size_t r = 0; r < first.size(); ++r) {
            MetricsRow mean = first[r];
            mean.trials = config.trials;
            mean.recovery_rate = mean.avg_total_displacement = mean.high_energy_pct = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                const MetricsRow& row = results[i].rows.at(r);
                mean.recovery_rate += row.recovery_rate;
                mean.avg_total_displacement += row.avg_total_displacement;
                mean.high_energy_pct += row.high_energy_pct;
            }
            const double count = static_cast<double>(config.trials);
            mean.recovery_rate /= count;
            mean.avg_total_displacement /= count;
            mean.high_energy_pct /= count;
            rows.push_back(mean);
        }
    }
    return rows;
}

std::vector<MetricsRow> run_experiment(const ExperimentConfig& config, std::size_t jobs) {
    return run_sweep(config, SweepOptions{{config.n}, jobs, nullptr});
}

void write_csv_header(std::ostream& os) {
    os << "scheme,N,trials,failure_pct,recovery_rate,avg_total_displacement,high_energy_pct\n";
}

void write_csv_row(std::ostream& os, const MetricsRow& row) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%g,%.6f,%.6f,%.6f\n", row.scheme.c_str(), row.n, row.trials,
                  row.failure_pct, row.recovery_rate, row.avg_total_displacement, row.high_energy_pct);
    os << buf;
}

}  // namespace barrier
