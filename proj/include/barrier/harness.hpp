#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "barrier/core.hpp"
#include "barrier/outcome.hpp"
#include "barrier/random.hpp"

namespace barrier {

enum class Scheme { NMove, RMove, CMove, DMove };

std::string to_string(Scheme s);
// Accepts "nmove", "rmove", "cmove", "dmove" (case-insensitive).
std::optional<Scheme> parse_scheme(std::string_view name);

struct ExperimentConfig {
    std::size_t n = 140;
    double length = 4000.0;
    double width = 60.0;
    double rho = 30.0;
    std::optional<double> comm;   // default 2 * rho
    double sigma = 6.0;
    double initial_energy = 100.0;
    double cost_per_unit = 1.0;
    double static_threshold = 10.0;
    std::optional<int> hop_budget;  // default floor(n / 20), at least 2
    double failure_fraction_max = 0.30;
    std::vector<double> report_points{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    std::size_t trials = 100;
    std::vector<Scheme> schemes{Scheme::NMove, Scheme::RMove, Scheme::CMove, Scheme::DMove};
    std::uint64_t seed = 1;
    std::size_t max_redraws = 50;

    double comm_radius() const { return comm.value_or(2.0 * rho); }
    int k() const;
    void validate() const;
};

class InitialBarrierImpossible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MetricsRow {
    std::string scheme;
    std::size_t n = 0;
    std::size_t trials = 1;
    double failure_pct = 0.0;
    double recovery_rate = 100.0;
    double avg_total_displacement = 0.0;
    double high_energy_pct = 100.0;
};

// One failure episode inside a trial.
struct Episode {
    std::size_t index = 0;
    SensorId failed{};
    bool on_barrier = false;
    bool barrier_was_up = false;
    Mechanism mechanism = Mechanism::None;
    bool recovered = false;
    double displacement = 0.0;
};

// Running tallies a MetricsRow is computed from.
struct TrialLog {
    std::size_t failures = 0;    // x
    std::size_t recoveries = 0;  // y
    double displacement = 0.0;
    std::size_t deployed = 0;
    std::size_t high_energy = 0;
};

struct TrialResult {
    std::vector<MetricsRow> rows;
    std::vector<Episode> episodes;
    double total_displacement = 0.0;
    double total_energy_spent = 0.0;
    std::size_t redraws = 0;
};

// Sensor i aimed at (i * L / (N - 1), W / 2) plus Gaussian noise on both
// axes; y is clamped into the belt.
std::vector<Sensor> generate_deployment(const ExperimentConfig& config, Rng& rng);

World make_world(const ExperimentConfig& config, std::vector<Sensor> sensors);

// Report-point failure counts for N sensors.
std::vector<std::size_t> report_counts(const ExperimentConfig& config);

MetricsRow compute_metrics(const TrialLog& log);
std::size_t count_high_energy(const World& world);

TrialResult run_trial(Scheme scheme, const ExperimentConfig& config, std::uint64_t seed);

// Seed of trial t for sensor count n; independent of the scheme so that all
// schemes see the same deployment and failure order.
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial);

struct SweepOptions {
    std::vector<std::size_t> n_list;
    std::size_t jobs = 1;
    // Receives one JSON object per failure episode when set.
    std::ostream* detail = nullptr;
};

// Means over trials per (scheme, N, report point), ordered by scheme, then
// N, then report point. Independent of the job count.
std::vector<MetricsRow> run_sweep(const ExperimentConfig& config, const SweepOptions& options);
std::vector<MetricsRow> run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const MetricsRow& row);

}  // namespace barrier
