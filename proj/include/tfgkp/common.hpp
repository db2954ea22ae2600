// common.hpp -- shared error types, numeric constants, modular helpers
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfgkp {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Domain violation in a single operation argument.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Aggregated validation failures; `issues` keeps every failure, not just the first.
struct ValidationError : std::runtime_error {
    std::vector<std::string> issues;
    explicit ValidationError(std::vector<std::string> list)
        : std::runtime_error(join(list)), issues(std::move(list)) {}
    static std::string join(const std::vector<std::string>& list) {
        std::string out;
        for (const auto& s : list) {
            if (!out.empty()) out += '\n';
            out += s;
        }
        return out;
    }
};

// Non-finite value detected in a result.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Centered representative of x modulo L, in (-L/2, L/2].
// Values landing exactly on the cell boundary map to the positive edge.
inline double centered_mod(double x, double L) {
    double r = x - L * std::ceil(x / L - 0.5);
    if (r <= -0.5 * L) r += L;  // guards the rounding case r == -L/2
    return r;
}

inline bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace tfgkp
