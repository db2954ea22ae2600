#include "tfgkp/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfgkp/fourier.hpp"
#include "tfgkp/logical.hpp"

namespace tfgkp {

namespace {

std::size_t next_pow2(double x) {
    std::size_t n = 2;
    while (static_cast<double>(n) < x) n *= 2;
    return n;
}

long long parity_steps(double dev, double syndrome, double cell) {
    return std::llround((dev - syndrome) / cell);
}

ResidualLogical residual_from(const Syndrome& s) {
    const double t0 = kPi / s.omega0;
    const bool x = parity_steps(s.trueDevOmega, s.sOmega, s.omega0) % 2 != 0;
    const bool z = parity_steps(s.trueDevTime, s.sTime, t0) % 2 != 0;
    if (x && z) return ResidualLogical::Y;
    if (x) return ResidualLogical::X;
    if (z) return ResidualLogical::Z;
    return ResidualLogical::I;
}

int comb_logical_index(const AnalyticComb& c) {
    const double w0 = c.spacing / 2.0;
    const long k = std::lround(c.offset / w0);
    return static_cast<int>(((k % 2) + 2) % 2);
}

struct TrialDraw {
    double omega = 0.0;
    double time = 0.0;
};

// Measurement draws for a comb displaced by (u, tau): base marginals plus the
// tracked offsets. Frequency is drawn before time.
TrialDraw draw_measurement(const MarginalSampler& freq, const TimePeakSampler& time,
                           double u, double tau, Rng& rng) {
    TrialDraw d;
    d.omega = u + freq.draw(rng);
    d.time = tau + time.draw(rng);
    return d;
}

Syndrome fold_syndrome(double omega, double time, double u, double tau, int k,
                       double w0, bool groundTruth) {
    const double t0 = kPi / w0;
    Syndrome s;
    s.omega0 = w0;
    s.sOmega = centered_mod(omega, w0);
    s.sTime = centered_mod(time, t0);
    if (groundTruth) {
        s.trueDevOmega = u + centered_mod(omega - u - static_cast<double>(k) * w0, 2.0 * w0);
        s.trueDevTime = tau + centered_mod(time - tau, t0);
        s.hasGroundTruth = true;
    }
    return s;
}

void validate_model(const NoiseModel& model, long n) {
    if (model.perModeOmegaStd < 0.0 || model.perModeTimeStd < 0.0)
        throw DomainError("noise standard deviations must be nonnegative");
    if (model.stochastic() && !model.fixedDisplacements.empty())
        throw DomainError("stochastic noise and fixed displacements are exclusive");
    for (long j : model.activeModes)
        if (j < 1 || j > n)
            throw DomainError("active photon " + std::to_string(j) + " outside 1.." +
                              std::to_string(n));
    for (const auto& d : model.fixedDisplacements)
        if (d.mode < 1 || d.mode > n)
            throw DomainError("fixed displacement photon " + std::to_string(d.mode) +
                              " outside 1.." + std::to_string(n));
}

}  // namespace

double closed_form_error(double delta, double omega0) {
    if (!(delta > 0.0) || !(omega0 > 0.0))
        throw DomainError("closed-form error rate needs positive width and spacing");
    const double r = delta / omega0;
    return (r / kPi) * std::exp(-kPi / (4.0 * r * r));
}

std::vector<LocalDisplacement> sample_noise(const NoiseModel& model, long n, Rng& rng) {
    validate_model(model, n);
    if (!model.fixedDisplacements.empty()) return model.fixedDisplacements;
    std::vector<LocalDisplacement> out;
    out.reserve(static_cast<std::size_t>(n));
    const auto active = [&](long j) {
        return model.activeModes.empty() ||
               std::find(model.activeModes.begin(), model.activeModes.end(), j) !=
                   model.activeModes.end();
    };
    for (long j = 1; j <= n; ++j) {
        LocalDisplacement d{j, 0.0, 0.0};
        if (active(j)) {
            if (model.perModeOmegaStd > 0.0) d.dOmega = model.perModeOmegaStd * rng.next_gaussian();
            if (model.perModeTimeStd > 0.0) d.dT = model.perModeTimeStd * rng.next_gaussian();
        }
        out.push_back(d);
    }
    return out;
}

MarginalSampler MarginalSampler::for_mode(const ModeWavefunction& f) {
    MarginalSampler s;
    if (const auto* c = std::get_if<AnalyticComb>(&f)) {
        const double half = 6.5 * c->envWidth / std::sqrt(2.0) + 8.0 * c->peakWidth +
                            c->spacing;
        const std::size_t count =
            std::max<std::size_t>(4096, next_pow2(2.0 * half * 12.0 / c->peakWidth));
        std::vector<double> x(count), d(count);
        const double h = 2.0 * half / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            x[i] = c->shift - half + h * static_cast<double>(i);
            d[i] = std::norm(evaluate(f, x[i]));
        }
        return from_density_table(std::move(x), std::move(d));
    }
    if (const auto* p = std::get_if<PlainGaussian>(&f)) {
        s.kind_ = Kind::gaussian;
        s.origin_ = p->center + p->shift;
        s.densityStd_ = p->width / std::sqrt(2.0);
        return s;
    }
    if (const auto* l = std::get_if<IdealLattice>(&f)) {
        s.kind_ = Kind::lattice;
        s.spacing_ = l->spacing;
        s.origin_ = l->offset + l->shift;
        return s;
    }
    const Grid1D& g = std::get<Grid1D>(f);
    std::vector<double> x(g.count()), d(g.count());
    for (std::size_t i = 0; i < g.count(); ++i) {
        x[i] = g.x_at(i);
        d[i] = std::norm(g.values[i]);
    }
    return from_density_table(std::move(x), std::move(d));
}

MarginalSampler MarginalSampler::from_density_table(std::vector<double> x,
                                                    std::vector<double> density) {
    if (x.size() != density.size() || x.size() < 2)
        throw DomainError("density table needs at least two matched nodes");
    MarginalSampler s;
    s.kind_ = Kind::table;
    s.x_ = std::move(x);
    s.dens_ = std::move(density);
    s.cdf_.resize(s.x_.size());
    s.cdf_[0] = 0.0;
    for (std::size_t i = 1; i < s.x_.size(); ++i) {
        const double seg = 0.5 * (s.dens_[i - 1] + s.dens_[i]) * (s.x_[i] - s.x_[i - 1]);
        s.cdf_[i] = s.cdf_[i - 1] + seg;
    }
    const double total = s.cdf_.back();
    if (!(total > 0.0)) throw DomainError("density table has zero mass");
    for (double& v : s.cdf_) v /= total;
    for (double& v : s.dens_) v /= total;
    return s;
}

double MarginalSampler::draw(Rng& rng) const {
    if (kind_ == Kind::gaussian) return origin_ + densityStd_ * rng.next_gaussian();
    if (kind_ == Kind::lattice) {
        const long s = static_cast<long>(rng.next_below(65)) - 32;
        return origin_ + spacing_ * static_cast<double>(s);
    }
    const double r = rng.next_double();
    const auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    const std::size_t seg = std::min(i, cdf_.size() - 1) - 1;
    const double h = x_[seg + 1] - x_[seg];
    const double local = r - cdf_[seg];
    const double d0 = dens_[seg];
    const double slope = dens_[seg + 1] - d0;
    double t;
    if (std::abs(slope) < 1e-14 * (d0 + 1e-300)) {
        t = (d0 > 0.0) ? local / (h * d0) : 0.5;
    } else {
        const double disc = d0 * d0 + 2.0 * slope * local / h;
        t = (-d0 + std::sqrt(std::max(0.0, disc))) / slope;
    }
    return x_[seg] + std::clamp(t, 0.0, 1.0) * h;
}

TimePeakSampler TimePeakSampler::for_comb(const AnalyticComb& comb) {
    TimePeakSampler s;
    s.t0_ = 2.0 * kPi / comb.spacing;
    // Dual widths: frequency peak std sigma maps to a time envelope of density
    // weight exp(-(t sigma)^2); frequency envelope std E maps to time peak
    // density std 1/(sqrt(2) E).
    const double sigma = comb.peakWidth;
    s.jitterStd_ = std::isfinite(comb.envWidth)
                       ? 1.0 / (std::sqrt(2.0) * comb.envWidth)
                       : 0.0;
    s.mMax_ = static_cast<long>(std::ceil(std::sqrt(40.0) / (s.t0_ * sigma)));
    s.cum_.clear();
    double acc = 0.0;
    for (long m = -s.mMax_; m <= s.mMax_; ++m) {
        const double arg = static_cast<double>(m) * s.t0_ * sigma;
        acc += std::exp(-arg * arg);
        s.cum_.push_back(acc);
    }
    for (double& v : s.cum_) v /= acc;
    return s;
}

double TimePeakSampler::draw(Rng& rng) const {
    const double r = rng.next_double();
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), r);
    const long idx = std::min<long>(static_cast<long>(it - cum_.begin()),
                                    static_cast<long>(cum_.size()) - 1);
    const double m = static_cast<double>(idx - mMax_);
    return m * t0_ + jitterStd_ * rng.next_gaussian();
}

Syndrome extract_syndrome(const CollectiveState& state, SyndromeMode mode, Rng* rng,
                          double omega0) {
    const ModeWavefunction& m1 = state.mode(1);

    if (const auto* l = std::get_if<IdealLattice>(&m1)) {
        // Zero-width limit: both modes reduce to the tracked values.
        const double w0 = l->spacing / 2.0;
        return fold_syndrome(l->shift, l->phaseSlope, l->shift, l->phaseSlope, 0, w0,
                             true);
    }
    if (const auto* c = std::get_if<AnalyticComb>(&m1)) {
        const double w0 = c->spacing / 2.0;
        const int k = comb_logical_index(*c);
        // Exact mode reads the tracked displacement, which is already relative
        // to the codeword lattice; no peak-offset subtraction applies.
        if (mode == SyndromeMode::exact)
            return fold_syndrome(c->shift, c->phaseSlope, c->shift, c->phaseSlope, 0, w0,
                                 true);
        if (rng == nullptr) throw DomainError("sampled syndrome extraction needs a generator");
        AnalyticComb base = *c;
        base.shift = 0.0;
        base.phaseSlope = 0.0;
        base.globalPhase = 1.0;
        const MarginalSampler freq = MarginalSampler::for_mode(ModeWavefunction{base});
        const TimePeakSampler time = TimePeakSampler::for_comb(base);
        const TrialDraw d = draw_measurement(freq, time, c->shift, c->phaseSlope, *rng);
        return fold_syndrome(d.omega, d.time, c->shift, c->phaseSlope, k, w0, true);
    }
    if (const auto* g = std::get_if<Grid1D>(&m1)) {
        // Sampled grids carry no tracked shifts; always measure.
        if (rng == nullptr) throw DomainError("sampled syndrome extraction needs a generator");
        if (!(omega0 > 0.0))
            throw DomainError("lattice half-spacing required for sampled-grid states");
        const MarginalSampler freq = MarginalSampler::for_mode(m1);
        const Grid1D timeProfile = spectral_transform(*g, -1);
        const MarginalSampler time = MarginalSampler::for_mode(ModeWavefunction{timeProfile});
        const double omega = freq.draw(*rng);
        const double t = time.draw(*rng);
        return fold_syndrome(omega, t, 0.0, 0.0, 0, omega0, false);
    }
    throw DomainError("mode 1 carries no code lattice");
}

DecodeResult decode_and_correct(const CollectiveState& state, const Syndrome& syndrome) {
    if (!(syndrome.omega0 > 0.0)) throw DomainError("syndrome lacks a lattice half-spacing");
    DecodeResult r{apply_displacement(
                       state, CollectiveDisplacement{-syndrome.sOmega, syndrome.sTime, 1}),
                   {}};
    r.outcome.appliedOmega = -syndrome.sOmega;
    r.outcome.appliedTime = -syndrome.sTime;
    if (syndrome.hasGroundTruth) {
        r.outcome.residualLogical = residual_from(syndrome);
        r.outcome.trueShiftOmega = syndrome.trueDevOmega;
        r.outcome.trueShiftTime = syndrome.trueDevTime;
        r.outcome.oracleValid = true;
    }
    return r;
}

RegionCheck correctable_region_check(const std::vector<LocalDisplacement>& displacements,
                                     long n, const CodeParams& params) {
    double sumOmega = 0.0;
    double sumT = 0.0;
    for (const auto& d : displacements) {
        sumOmega += d.dOmega;
        sumT += d.dT;
    }
    const double rootN = std::sqrt(static_cast<double>(n));
    RegionCheck c;
    c.freqAxis = std::abs(sumOmega) < rootN * params.omega0 / 2.0;
    c.timeAxis = std::abs(sumT) < rootN * params.t0 / 2.0;
    c.joint = 4.0 * std::abs(sumOmega) * std::abs(sumT) < static_cast<double>(n) * kPi;
    return c;
}

std::pair<double, double> wilson_interval(long successes, long trials) {
    if (trials < 1) throw DomainError("interval needs at least one trial");
    const double z = 1.959963984540054;
    const double nd = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nd;
    const double z2n = z * z / nd;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half =
        z * std::sqrt(p * (1.0 - p) / nd + z2n / (4.0 * nd)) / (1.0 + z2n);
    // The interval must bracket the point estimate; center - half can land an
    // ulp past p at the extremes.
    return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

ErrorRateReport monte_carlo_error_rate(const CodeParams& params, double sigmaG,
                                       const NoiseModel& model, long trials,
                                       std::uint64_t seed, SyndromeMode mode) {
    if (trials < 1) throw DomainError("trial count must be at least 1");
    validate_model(model, params.n);
    const double w0 = params.omega0;
    const double rootN = std::sqrt(static_cast<double>(params.n));

    // Tracked collective displacement per trial; fixed lists are constant.
    double fixedU = 0.0, fixedTau = 0.0;
    if (!model.fixedDisplacements.empty()) {
        for (const auto& d : model.fixedDisplacements) {
            fixedU += d.dOmega / rootN;
            fixedTau += d.dT / rootN;
        }
    }

    // Base marginal samplers per logical index (sampled mode only). The time
    // marginal density is identical for k = 0 and 1.
    std::vector<MarginalSampler> freqSamplers;
    std::vector<TimePeakSampler> timeSamplers;
    if (mode == SyndromeMode::sampled) {
        for (int k = 0; k < 2; ++k) {
            const AnalyticComb comb = make_comb(params, k);
            freqSamplers.push_back(MarginalSampler::for_mode(ModeWavefunction{comb}));
            timeSamplers.push_back(TimePeakSampler::for_comb(comb));
        }
    }

    ErrorRateReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.params = params;
    rep.sigmaG = sigmaG;
    rep.model = model;
    rep.syndromeMode = mode;

    for (long trial = 0; trial < trials; ++trial) {
        const int k = static_cast<int>(trial % 2);
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));
        double u = fixedU, tau = fixedTau;
        if (model.stochastic()) {
            const auto ds = sample_noise(model, params.n, rng);
            u = 0.0;
            tau = 0.0;
            for (const auto& d : ds) {
                u += d.dOmega / rootN;
                tau += d.dT / rootN;
            }
        }
        Syndrome s;
        if (mode == SyndromeMode::exact) {
            s = fold_syndrome(u, tau, u, tau, 0, w0, true);
        } else {
            const TrialDraw d = draw_measurement(
                freqSamplers[static_cast<std::size_t>(k)],
                timeSamplers[static_cast<std::size_t>(k)], u, tau, rng);
            s = fold_syndrome(d.omega, d.time, u, tau, k, w0, true);
        }
        switch (residual_from(s)) {
            case ResidualLogical::I: break;
            case ResidualLogical::X: ++rep.xErrors; break;
            case ResidualLogical::Z: ++rep.zErrors; break;
            case ResidualLogical::Y: ++rep.yErrors; break;
        }
    }

    const long errors = rep.xErrors + rep.zErrors + rep.yErrors;
    rep.pLogical = static_cast<double>(errors) / static_cast<double>(trials);
    const auto ci = wilson_interval(errors, trials);
    rep.ciLow = ci.first;
    rep.ciHigh = ci.second;
    return rep;
}

}  // namespace tfgkp
