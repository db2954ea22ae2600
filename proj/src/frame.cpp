#include "tfgkp/frame.hpp"

#include <cmath>
#include <string>

namespace tfgkp {

FrameMatrix build_alpha(long n) {
    if (n < 1 || !is_power_of_two(n))
        throw DomainError("frame dimension must be a power of two, got " +
                          std::to_string(n));
    // Sylvester doubling with +1/-1 entries, scaled at the end.
    std::vector<double> h{1.0};
    for (long m = 1; m < n; m *= 2) {
        std::vector<double> next(static_cast<std::size_t>(4 * m * m));
        for (long i = 0; i < m; ++i) {
            for (long j = 0; j < m; ++j) {
                const double v = h[static_cast<std::size_t>(i * m + j)];
                next[static_cast<std::size_t>(i * 2 * m + j)] = v;
                next[static_cast<std::size_t>(i * 2 * m + (m + j))] = v;
                next[static_cast<std::size_t>((m + i) * 2 * m + j)] = v;
                next[static_cast<std::size_t>((m + i) * 2 * m + (m + j))] = -v;
            }
        }
        h = std::move(next);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : h) v *= scale;
    return FrameMatrix{n, std::move(h)};
}

std::vector<std::pair<double, double>> map_local_displacement(const FrameMatrix& frame,
                                                              const LocalDisplacement& d) {
    if (d.mode < 1 || d.mode > frame.n)
        throw DomainError("photon index " + std::to_string(d.mode) +
                          " outside 1.." + std::to_string(frame.n));
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(frame.n));
    for (long k = 0; k < frame.n; ++k) {
        const double a = frame.entry(d.mode - 1, k);
        out.emplace_back(a * d.dOmega, a * d.dT);
    }
    return out;
}

double frame_orthogonality_defect(const FrameMatrix& frame) {
    double worst = 0.0;
    for (long a = 0; a < frame.n; ++a) {
        for (long b = 0; b < frame.n; ++b) {
            double dot = 0.0;
            for (long i = 0; i < frame.n; ++i)
                dot += frame.entry(i, a) * frame.entry(i, b);
            const double target = (a == b) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - target));
        }
    }
    return worst;
}

}  // namespace tfgkp
