#include "tfgkp/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tfgkp/fourier.hpp"

namespace tfgkp {

namespace {

constexpr double kExpCut = 60.0;  // e^{-60} ~ 9e-27, below any tolerance here

// Flattened Gaussian sum: f(x) = gp e^{i slope x} sum_p w_p G(x - c_p),
// G a unit-amplitude-std-sigma Gaussian peak, centers ascending.
struct GaussianSum {
    std::vector<double> weights;
    std::vector<double> centers;
    double sigma = 0.0;
    double slope = 0.0;
    cplx gp = 1.0;
};

double comb_weight(const AnalyticComb& c, long s) {
    const double center = c.offset + c.spacing * static_cast<double>(s);
    if (!std::isfinite(c.envWidth)) return 1.0;
    const double u = center / c.envWidth;
    return std::exp(-0.5 * u * u);
}

GaussianSum to_gaussian_sum(const AnalyticComb& c) {
    GaussianSum g;
    g.sigma = c.peakWidth;
    g.slope = c.phaseSlope;
    g.gp = c.globalPhase;
    g.weights.reserve(2 * c.truncation + 1);
    g.centers.reserve(2 * c.truncation + 1);
    for (long s = -c.truncation; s <= c.truncation; ++s) {
        g.weights.push_back(c.normConst * comb_weight(c, s));
        g.centers.push_back(c.offset + c.spacing * static_cast<double>(s) + c.shift);
    }
    return g;
}

GaussianSum to_gaussian_sum(const PlainGaussian& p) {
    GaussianSum g;
    g.sigma = p.width;
    g.slope = p.phaseSlope;
    g.gp = p.globalPhase;
    g.weights.push_back(std::pow(kPi * p.width * p.width, -0.25));
    g.centers.push_back(p.center + p.shift);
    return g;
}

// <a|b> for two Gaussian sums via the pairwise overlap kernel
//   int e^{i b x} G_A(x - mu) G_B(x - nu) dx
//     = sqrt(2 pi s^2) e^{-(mu-nu)^2 / (2 (sA^2 + sB^2))} e^{i b mbar} e^{-b^2 s^2 / 2}
// with s^2 = sA^2 sB^2 / (sA^2 + sB^2), mbar the variance-weighted midpoint.
cplx inner_gaussian_sums(const GaussianSum& a, const GaussianSum& b) {
    const double beta = b.slope - a.slope;
    const double varSum = a.sigma * a.sigma + b.sigma * b.sigma;
    const double s2 = a.sigma * a.sigma * b.sigma * b.sigma / varSum;
    const double pref = std::sqrt(2.0 * kPi * s2) * std::exp(-0.5 * beta * beta * s2);
    const double cut = std::sqrt(2.0 * kExpCut * varSum);

    cplx acc = 0.0;
    std::size_t jStart = 0;
    for (std::size_t i = 0; i < a.centers.size(); ++i) {
        const double mu = a.centers[i];
        while (jStart < b.centers.size() && b.centers[jStart] < mu - cut) ++jStart;
        for (std::size_t j = jStart; j < b.centers.size() && b.centers[j] <= mu + cut; ++j) {
            const double nu = b.centers[j];
            const double mbar =
                (mu * b.sigma * b.sigma + nu * a.sigma * a.sigma) / varSum;
            const double mag = a.weights[i] * b.weights[j] *
                               std::exp(-(mu - nu) * (mu - nu) / (2.0 * varSum));
            acc += mag * std::polar(1.0, beta * mbar);
        }
    }
    return std::conj(a.gp) * b.gp * pref * acc;
}

bool is_ideal(const ModeWavefunction& f) {
    return std::holds_alternative<IdealLattice>(f);
}

cplx inner_ideal(const IdealLattice& a, const IdealLattice& b) {
    const double L = a.spacing;
    if (std::abs(b.spacing - L) > 1e-9 * L) return 0.0;
    const double xa = a.offset + a.shift;
    const double xb = b.offset + b.shift;
    if (std::abs(centered_mod(xb - xa, L)) > 1e-9 * L) return 0.0;
    const double dTau = b.phaseSlope - a.phaseSlope;
    if (std::abs(centered_mod(dTau * L, 2.0 * kPi)) > 1e-9) return 0.0;
    return std::conj(a.globalPhase) * b.globalPhase * std::polar(1.0, dTau * xb);
}

double peak_sigma(const ModeWavefunction& f) {
    if (const auto* c = std::get_if<AnalyticComb>(&f)) return c->peakWidth;
    if (const auto* p = std::get_if<PlainGaussian>(&f)) return p->width;
    throw DomainError("peak width defined for analytic forms only");
}

// Fraction of the density outside [xMin, xMax), per-peak Gaussian tails
// weighted by squared peak weights (cross terms negligible at comb spacings).
double tail_mass_outside(const ModeWavefunction& f, double xMin, double xMax) {
    const GaussianSum g = std::holds_alternative<AnalyticComb>(f)
                              ? to_gaussian_sum(std::get<AnalyticComb>(f))
                              : to_gaussian_sum(std::get<PlainGaussian>(f));
    const double sigmaD = g.sigma / std::sqrt(2.0);  // density std of one peak
    double total = 0.0;
    double outside = 0.0;
    for (std::size_t i = 0; i < g.centers.size(); ++i) {
        const double w2 = g.weights[i] * g.weights[i];
        total += w2;
        outside += 0.5 * w2 *
                   (std::erfc((xMax - g.centers[i]) / (std::sqrt(2.0) * sigmaD)) +
                    std::erfc((g.centers[i] - xMin) / (std::sqrt(2.0) * sigmaD)));
    }
    return outside / total;
}

std::size_t next_pow2(double x) {
    std::size_t n = 2;
    while (static_cast<double>(n) < x) n *= 2;
    return n;
}

Grid1D displace_grid(const Grid1D& g, double x0, double slope) {
    const std::size_t n = g.count();
    const double h = g.step();
    // Spectral translation: f(x - x0) from phase ramps on signed DFT frequencies.
    std::vector<cplx> freq = dft(g.values, -1);
    for (std::size_t j = 0; j < n; ++j) {
        const long js = (j < n / 2) ? static_cast<long>(j)
                                    : static_cast<long>(j) - static_cast<long>(n);
        const double k = 2.0 * kPi * static_cast<double>(js) / (h * static_cast<double>(n));
        freq[j] *= std::polar(1.0, -k * x0);
    }
    std::vector<cplx> shifted = dft(freq, +1);
    Grid1D out{g.xMin, g.xMax, std::move(shifted)};
    const double invN = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        out.values[i] *= invN * std::polar(1.0, slope * (out.x_at(i) - x0));
    return out;
}

}  // namespace

double Grid1D::norm_sq() const {
    double acc = 0.0;
    for (const cplx& v : values) acc += std::norm(v);
    return step() * acc;
}

AnalyticComb make_comb(const CodeParams& params, int k) {
    if (k != 0 && k != 1) throw DomainError("logical index must be 0 or 1");
    AnalyticComb c;
    c.spacing = 2.0 * params.omega0;
    c.offset = static_cast<double>(k) * params.omega0;
    c.peakWidth = params.delta / std::sqrt(kPi);
    c.envWidth = 1.0 / (std::sqrt(2.0) * params.kappa);
    c.truncation = static_cast<long>(std::ceil(3.0 / (params.kappa * params.omega0)));
    c.normConst = 1.0;
    const GaussianSum g = to_gaussian_sum(c);
    const double n2 = inner_gaussian_sums(g, g).real();
    c.normConst = 1.0 / std::sqrt(n2);
    return c;
}

PlainGaussian make_plain_gaussian(double center, double width) {
    if (!(width > 0.0)) throw DomainError("gaussian width must be positive");
    return PlainGaussian{center, width, 0.0, 0.0, 1.0};
}

IdealLattice make_ideal_lattice(const CodeParams& params, int k) {
    if (k != 0 && k != 1) throw DomainError("logical index must be 0 or 1");
    return IdealLattice{2.0 * params.omega0, static_cast<double>(k) * params.omega0,
                        0.0, 0.0, 1.0};
}

ModeWavefunction displace_1d(const ModeWavefunction& f, double x0, double slope) {
    return std::visit(
        [&](const auto& w) -> ModeWavefunction {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Grid1D>) {
                return displace_grid(w, x0, slope);
            } else {
                T out = w;
                out.globalPhase *= std::polar(1.0, -(slope + w.phaseSlope) * x0);
                out.phaseSlope += slope;
                out.shift += x0;
                return out;
            }
        },
        f);
}

cplx inner_product(const ModeWavefunction& a, const ModeWavefunction& b) {
    if (is_ideal(a) || is_ideal(b)) {
        if (is_ideal(a) && is_ideal(b))
            return inner_ideal(std::get<IdealLattice>(a), std::get<IdealLattice>(b));
        throw DomainError("exact-lattice states pair only with exact-lattice states");
    }
    const auto* ga = std::get_if<Grid1D>(&a);
    const auto* gb = std::get_if<Grid1D>(&b);
    if (ga && gb) {
        const double span = ga->xMax - ga->xMin;
        if (ga->count() != gb->count() || std::abs(ga->xMin - gb->xMin) > 1e-12 * span ||
            std::abs(ga->xMax - gb->xMax) > 1e-12 * span)
            throw DomainError("sampled inner product needs an identical grid domain");
        cplx acc = 0.0;
        for (std::size_t i = 0; i < ga->count(); ++i)
            acc += std::conj(ga->values[i]) * gb->values[i];
        return ga->step() * acc;
    }
    if (ga || gb) {
        // Mixed pair: sample the analytic side on the existing grid.
        const Grid1D& grid = ga ? *ga : *gb;
        const ModeWavefunction& analytic = ga ? b : a;
        Grid1D sampled = sample_on_grid(analytic, {grid.xMin, grid.xMax, grid.count()});
        return ga ? inner_product(a, ModeWavefunction{std::move(sampled)})
                  : inner_product(ModeWavefunction{std::move(sampled)}, b);
    }
    const GaussianSum sa = std::holds_alternative<AnalyticComb>(a)
                               ? to_gaussian_sum(std::get<AnalyticComb>(a))
                               : to_gaussian_sum(std::get<PlainGaussian>(a));
    const GaussianSum sb = std::holds_alternative<AnalyticComb>(b)
                               ? to_gaussian_sum(std::get<AnalyticComb>(b))
                               : to_gaussian_sum(std::get<PlainGaussian>(b));
    return inner_gaussian_sums(sa, sb);
}

cplx evaluate(const ModeWavefunction& f, double x) {
    if (const auto* c = std::get_if<AnalyticComb>(&f)) {
        const double sig2 = 2.0 * c->peakWidth * c->peakWidth;
        const double reach = c->peakWidth * std::sqrt(2.0 * kExpCut);
        const long sLo = std::max(
            -c->truncation,
            static_cast<long>(std::floor((x - c->shift - c->offset - reach) / c->spacing)));
        const long sHi = std::min(
            c->truncation,
            static_cast<long>(std::ceil((x - c->shift - c->offset + reach) / c->spacing)));
        double sum = 0.0;
        for (long s = sLo; s <= sHi; ++s) {
            const double m = c->offset + c->spacing * static_cast<double>(s) + c->shift;
            sum += comb_weight(*c, s) * std::exp(-(x - m) * (x - m) / sig2);
        }
        return c->globalPhase * std::polar(1.0, c->phaseSlope * x) * c->normConst * sum;
    }
    if (const auto* p = std::get_if<PlainGaussian>(&f)) {
        const double m = p->center + p->shift;
        const double amp = std::pow(kPi * p->width * p->width, -0.25) *
                           std::exp(-(x - m) * (x - m) / (2.0 * p->width * p->width));
        return p->globalPhase * std::polar(1.0, p->phaseSlope * x) * amp;
    }
    throw DomainError("pointwise evaluation is defined for analytic forms only");
}

Grid1D sample_on_grid(const ModeWavefunction& f, const GridSpec& spec) {
    if (is_ideal(f))
        throw DomainError("exact-lattice states have no normalizable samples");
    if (spec.count < 2 || !is_power_of_two(static_cast<long>(spec.count)))
        throw DomainError("grid count must be a power of two, at least 2");
    if (!(spec.xMax > spec.xMin)) throw DomainError("grid domain must be nonempty");
    if (const auto* g = std::get_if<Grid1D>(&f)) {
        const double span = g->xMax - g->xMin;
        if (g->count() == spec.count && std::abs(g->xMin - spec.xMin) <= 1e-12 * span &&
            std::abs(g->xMax - spec.xMax) <= 1e-12 * span)
            return *g;
        throw DomainError("resampling onto a different grid is not supported");
    }

    const double h = (spec.xMax - spec.xMin) / static_cast<double>(spec.count);
    const double sigma = peak_sigma(f);
    if (h > sigma / 8.0) {
        const std::size_t need = next_pow2((spec.xMax - spec.xMin) * 8.0 / sigma);
        throw DomainError("grid step " + std::to_string(h) +
                          " exceeds peak width / 8; need at least " +
                          std::to_string(need) + " points on this domain");
    }
    const double outside = tail_mass_outside(f, spec.xMin, spec.xMax);
    if (!(outside < 1e-9))
        throw DomainError("domain leaves " + std::to_string(outside) +
                          " of the density outside; widen the grid");

    Grid1D out{spec.xMin, spec.xMax, std::vector<cplx>(spec.count)};
    for (std::size_t i = 0; i < spec.count; ++i) out.values[i] = evaluate(f, out.x_at(i));
    const double n2 = out.norm_sq();
    if (std::abs(n2 - 1.0) > 1e-8)
        throw NumericError("sampled norm " + std::to_string(n2) + " deviates from 1");
    return out;
}

ModeWavefunction parity_flip(const ModeWavefunction& f) {
    if (const auto* c = std::get_if<AnalyticComb>(&f)) {
        AnalyticComb out = *c;
        out.offset = -c->offset;
        out.shift = -c->shift;
        out.phaseSlope = -c->phaseSlope;
        return out;
    }
    if (const auto* p = std::get_if<PlainGaussian>(&f)) {
        PlainGaussian out = *p;
        out.center = -p->center;
        out.shift = -p->shift;
        out.phaseSlope = -p->phaseSlope;
        return out;
    }
    if (const auto* l = std::get_if<IdealLattice>(&f)) {
        IdealLattice out = *l;
        out.offset = -l->offset;
        out.shift = -l->shift;
        out.phaseSlope = -l->phaseSlope;
        return out;
    }
    const Grid1D& g = std::get<Grid1D>(f);
    const double h = g.step();
    if (std::abs(g.xMin + g.xMax) > 0.5 * h)
        throw DomainError("grid reflection requires a centered domain");
    Grid1D out{g.xMin, g.xMax, std::vector<cplx>(g.count())};
    out.values[0] = g.values[0];
    for (std::size_t i = 1; i < g.count(); ++i) out.values[i] = g.values[g.count() - i];
    return out;
}

cplx modulation_expectation(const ModeWavefunction& f, double beta) {
    return inner_product(f, displace_1d(f, 0.0, beta));
}

double tracked_shift(const ModeWavefunction& f) {
    return std::visit(
        [](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Grid1D>)
                throw DomainError("sampled states do not track shifts");
            else
                return w.shift;
        },
        f);
}

double tracked_slope(const ModeWavefunction& f) {
    return std::visit(
        [](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, Grid1D>)
                throw DomainError("sampled states do not track phase slopes");
            else
                return w.phaseSlope;
        },
        f);
}

GridSpec default_grid(const CodeParams& params, double center, std::size_t count) {
    const double half = 4.0 / params.kappa + 8.0 * params.delta;
    GridSpec spec{center - half, center + half, count};
    if (count == 0) {
        const double sigma = params.delta / std::sqrt(kPi);
        spec.count = std::max<std::size_t>(1 << 14, next_pow2(2.0 * half * 8.0 / sigma * 1.05));
    }
    return spec;
}

}  // namespace tfgkp
