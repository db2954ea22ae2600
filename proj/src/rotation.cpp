#include "tfgkp/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tfgkp/common.hpp"
#include "tfgkp/decoder.hpp"
#include "tfgkp/wavefunction.hpp"

namespace tfgkp {

namespace {

struct PeakFit {
    double center = 0.0;
    double densityStd = 0.0;
};

// Weighted least-squares parabola on log-density over the half-maximum
// window; exact for a Gaussian peak, weights favor the top of the peak.
PeakFit fit_log_parabola(const std::vector<double>& x, const std::vector<double>& m,
                         std::size_t lo, std::size_t hi, std::size_t peak) {
    double s[5] = {0, 0, 0, 0, 0};
    double r[3] = {0, 0, 0};
    for (std::size_t i = lo; i <= hi; ++i) {
        const double xi = x[i] - x[peak];
        const double w = m[i] * m[i];
        const double y = std::log(m[i]);
        double p = w;
        for (int k = 0; k < 5; ++k) {
            s[k] += p;
            if (k < 3) r[k] += p * y;
            p *= xi;
        }
    }
    // Normal equations for (alpha, beta, gamma) against moments s0..s4.
    const double a[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]}, {s[2], s[3], s[4]}};
    double aug[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) aug[i][j] = a[i][j];
        aug[i][3] = r[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
            if (std::abs(aug[i][col]) > std::abs(aug[piv][col])) piv = i;
        for (int j = 0; j < 4; ++j) std::swap(aug[col][j], aug[piv][j]);
        for (int i = 0; i < 3; ++i) {
            if (i == col) continue;
            const double f = aug[i][col] / aug[col][col];
            for (int j = col; j < 4; ++j) aug[i][j] -= f * aug[col][j];
        }
    }
    const double beta = aug[1][3] / aug[1][1];
    const double gamma = aug[2][3] / aug[2][2];
    if (!(gamma < 0.0)) throw NumericError("peak fit has no curvature");
    PeakFit fit;
    fit.center = x[peak] - beta / (2.0 * gamma);
    fit.densityStd = std::sqrt(-1.0 / (2.0 * gamma));
    return fit;
}

}  // namespace

void RotationImperfection::validate() const {
    std::vector<std::string> issues;
    if (!(std::abs(theta) < kPi / 2.0))
        issues.push_back("mixing angle must satisfy |theta| < pi/2");
    if (!(sigma > 0.0)) issues.push_back("orthogonal width must be positive");
    if (!issues.empty()) throw ValidationError(issues);
}

EffectiveCombShape rotated_effective_params(const RotationImperfection& imp,
                                            const CodeParams& params) {
    imp.validate();
    const double c = std::cos(imp.theta);
    const double s = std::sin(imp.theta);
    EffectiveCombShape e;
    e.spacing = 2.0 * params.omega0 * c;
    e.exactWidth = std::sqrt(params.delta * params.delta * c * c +
                             imp.sigma * imp.sigma * s * s);
    e.additiveWidth = params.delta + imp.sigma * std::abs(s);
    return e;
}

RotationVerdict rotation_validity(const RotationImperfection& imp,
                                  const CodeParams& params) {
    imp.validate();
    const double rel = params.delta / params.omega0;
    if (1.0 - std::cos(imp.theta) <= rel * rel) return RotationVerdict::negligible;
    const double tan = std::abs(std::tan(imp.theta));
    const double bound = std::min(kPi * imp.sigma / (2.0 * params.omega0),
                                  params.omega0 / (2.0 * imp.sigma));
    return tan < bound ? RotationVerdict::adaptable : RotationVerdict::broken;
}

std::pair<double, double> adapted_error_rates(const RotationImperfection& imp,
                                              const CodeParams& params) {
    imp.validate();
    if (imp.theta == 0.0) return {0.0, 0.0};
    const double tan = std::abs(std::tan(imp.theta));
    const auto rate = [](double width) {
        return std::min(closed_form_error(width, 1.0), 1.0 - 1e-12);
    };
    return {rate(imp.sigma * tan / params.omega0),
            rate(tan / (imp.sigma * params.t0))};
}

MeasuredCombShape measure_rotated_marginal(const RotationImperfection& imp,
                                           const CodeParams& params,
                                           std::size_t count) {
    imp.validate();
    if (count < 512) throw DomainError("marginal grid needs at least 512 nodes");
    const AnalyticComb comb = make_comb(params, 0);
    const ModeWavefunction f{comb};
    const double c = std::cos(imp.theta);
    const double s = std::sin(imp.theta);
    const double aD = params.delta / std::sqrt(2.0 * kPi);  // carrier density std
    const double bD = imp.sigma / std::sqrt(2.0 * kPi);
    const double spacing = 2.0 * params.omega0 * c;

    const double xMax = 2.5 * spacing;
    std::vector<double> x(count), m(count);
    const double step = 2.0 * xMax / static_cast<double>(count - 1);
    const auto rho1 = [&](double u) { return std::norm(evaluate(f, u)); };

    if (std::abs(s) < 1e-12) {
        for (std::size_t i = 0; i < count; ++i) {
            x[i] = -xMax + step * static_cast<double>(i);
            m[i] = rho1(x[i]);
        }
    } else {
        // m(x') = (1/|s|) Int rho1(u) rho2((x' - c u)/s) du; the Gaussian
        // factor selects the contributing carrier peaks automatically.
        const std::size_t nodes = 1025;
        const double halfU = 10.0 * (bD * std::abs(s) + aD) / c;
        const double hu = 2.0 * halfU / static_cast<double>(nodes - 1);
        for (std::size_t i = 0; i < count; ++i) {
            x[i] = -xMax + step * static_cast<double>(i);
            const double u0 = x[i] / c;
            double acc = 0.0;
            for (std::size_t j = 0; j < nodes; ++j) {
                const double u = u0 - halfU + hu * static_cast<double>(j);
                const double v = (x[i] - c * u) / s;
                const double g = std::exp(-v * v / (2.0 * bD * bD));
                const double w = (j == 0 || j == nodes - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
                acc += w * rho1(u) * g;
            }
            m[i] = acc * hu / 3.0;
        }
    }

    std::vector<PeakFit> fits;
    for (int peakIndex = -1; peakIndex <= 1; ++peakIndex) {
        const double target = static_cast<double>(peakIndex) * spacing;
        const double halfWin = 0.35 * spacing;
        std::size_t best = 0;
        double bestVal = -1.0;
        for (std::size_t i = 0; i < count; ++i) {
            if (std::abs(x[i] - target) > halfWin) continue;
            if (m[i] > bestVal) {
                bestVal = m[i];
                best = i;
            }
        }
        if (bestVal <= 0.0) throw NumericError("marginal peak not found");
        std::size_t lo = best, hi = best;
        while (lo > 0 && m[lo - 1] > 0.5 * bestVal) --lo;
        while (hi + 1 < count && m[hi + 1] > 0.5 * bestVal) ++hi;
        if (hi - lo < 4) throw NumericError("marginal peak under-resolved");
        fits.push_back(fit_log_parabola(x, m, lo, hi, best));
    }

    MeasuredCombShape out;
    out.spacing = (fits[2].center - fits[0].center) / 2.0;
    out.width = std::sqrt(2.0 * kPi) * (fits[0].densityStd + fits[1].densityStd +
                                        fits[2].densityStd) / 3.0;
    return out;
}

}  // namespace tfgkp
