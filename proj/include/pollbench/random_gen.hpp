#pragma once

#include <pollbench/core.hpp>

#include <cstdint>

namespace pollbench {

/// splitmix64: tiny, well-mixed, and identical on every platform, which
/// keeps seeded experiments byte-reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n); modulo bias is irrelevant at test scale.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct RandomInstanceConfig {
    std::uint64_t seed = 0;
    int n = 6;
    int k = 2;
    Time tau = Time(1);
    long long work_min = 0;
    long long work_max = 4;
    long long release_max = 6;
};

/// Seed-deterministic instance with integer releases and works.
JobInstance random_instance(const RandomInstanceConfig& config);

} // namespace pollbench
