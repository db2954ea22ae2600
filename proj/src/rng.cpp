#include "tfgkp/rng.hpp"

#include <cmath>

namespace tfgkp {

namespace {
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial) {
    // Two mixing rounds decorrelate (seed, trial) pairs.
    return Rng(mix64(seed ^ mix64(trial + 1)));
}

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_gaussian_;
    }
    double u1 = 0.0;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    cached_gaussian_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    // Rejection sampling keeps the distribution exactly uniform.
    std::uint64_t limit = bound * (~0ull / bound);
    std::uint64_t x = 0;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

}  // namespace tfgkp
