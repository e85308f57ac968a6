#pragma once

#include <cstdint>
#include <random>

namespace barrier {

// Deterministic random stream. Only the raw 64-bit Mersenne Twister output is
// taken from the standard library; all derived distributions are computed
// here so that the same seed gives the same values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    double gaussian(double mean, double stddev);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

Rng seeded_rng(std::uint64_t seed);

// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace barrier
