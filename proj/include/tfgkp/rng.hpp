// rng.hpp -- counter-seeded generator with platform-stable output
//
// std::normal_distribution is implementation-defined, so Gaussian draws are
// hand-rolled (Box-Muller) to keep every byte of simulator output identical
// across standard libraries.
#pragma once

#include <cstdint>

namespace tfgkp {

// splitmix64 core; one instance per independent stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Derives the generator for one trial of a seeded run. Trials are
    // independent streams, so results do not depend on execution order.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double();

    // Standard normal draw (Box-Muller, second value cached).
    double next_gaussian();

    // Uniform integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace tfgkp
