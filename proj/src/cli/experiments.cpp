#include "experiments.hpp"

#include <cmath>
#include <cstdio>

#include "tfgkp/decoder.hpp"
#include "tfgkp/fourier.hpp"
#include "tfgkp/logical.hpp"
#include "tfgkp/loss.hpp"
#include "tfgkp/rotation.hpp"
#include "tfgkp/state.hpp"
#include "tfgkp/wavefunction.hpp"

namespace tfgkp::cli {

namespace {

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void run_codeword(const ExperimentConfig& cfg, ResultTable& t) {
    const AnalyticComb comb = make_comb(cfg.params, cfg.codeword.k);
    GridSpec spec = cfg.grid.span > 0.0
                        ? GridSpec{-cfg.grid.span, cfg.grid.span, cfg.grid.count}
                        : default_grid(cfg.params, 0.0, cfg.grid.count);
    Grid1D g = sample_on_grid(ModeWavefunction{comb}, spec);
    const bool timeDomain = cfg.codeword.domain == "time";
    if (timeDomain) g = to_time_domain(g);
    t.metadata.emplace_back("domain", cfg.codeword.domain);
    t.metadata.emplace_back("x_unit", timeDomain ? "s" : "rad/s");
    t.header = {"x", "amp_re", "amp_im", "density"};
    for (std::size_t i = 0; i < g.count(); ++i)
        t.rows.push_back({g.x_at(i), g.values[i].real(), g.values[i].imag(),
                          std::norm(g.values[i])});
}

void run_error_rate(const ExperimentConfig& cfg, ResultTable& t) {
    t.metadata.emplace_back("trials", std::to_string(cfg.trials));
    t.header = {"delta_over_omega0", "mc_rate", "mc_ci_low", "mc_ci_high", "closed_form"};
    for (double delta : cfg.deltas) {
        const CodeParams p = CodeParams::make(cfg.params.n, cfg.params.omega0, delta,
                                              cfg.params.kappa);
        const ErrorRateReport rep = monte_carlo_error_rate(p, cfg.sigmaG, cfg.noise,
                                                           cfg.trials, cfg.seed,
                                                           cfg.syndrome);
        t.rows.push_back({delta / cfg.params.omega0, rep.pLogical, rep.ciLow,
                          rep.ciHigh, closed_form_error(delta, cfg.params.omega0)});
    }
}

void run_scaling_scan(const ExperimentConfig& cfg, ResultTable& t) {
    t.header = {"n", "shift_identity", "identity_ok", "shift_flip", "flip_ok"};
    for (long n : cfg.ns) {
        const CodeParams p = CodeParams::make(n, cfg.params.omega0, cfg.params.delta,
                                              cfg.params.kappa);
        const CollectiveState base = make_ideal_codeword(p, 0, cfg.sigmaG);
        const double half = std::sqrt(static_cast<double>(n)) * p.omega0 / 2.0;
        const auto residual_for = [&](double shift) {
            const CollectiveState s =
                apply_displacement(base, LocalDisplacement{1, shift, 0.0});
            const Syndrome syn = extract_syndrome(s, SyndromeMode::exact);
            return decode_and_correct(s, syn).outcome.residualLogical;
        };
        const double dId = 0.9 * half;
        const double dFlip = 1.1 * half;
        t.rows.push_back({n, dId,
                          static_cast<long>(residual_for(dId) == ResidualLogical::I),
                          dFlip,
                          static_cast<long>(residual_for(dFlip) == ResidualLogical::X)});
    }
}

void run_loss_demo(const ExperimentConfig& cfg, ResultTable& t) {
    LossConfig lc;
    if (cfg.loss.etas.empty()) {
        lc = build_eta_config(cfg.params.n, cfg.loss.scheme);
    } else {
        lc.n = cfg.params.n;
        lc.scheme = cfg.loss.scheme;
        for (const auto& s : cfg.loss.etas) lc.etas.push_back(parse_rational(s));
        validate_loss_config(lc);
    }
    std::string etas;
    for (const auto& e : lc.etas) {
        if (!etas.empty()) etas += ' ';
        etas += std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
    }
    t.metadata.emplace_back("scheme", lc.scheme == LossScheme::singleShot
                                          ? "singleShot"
                                          : "pairwise");
    t.metadata.emplace_back("etas", etas);

    const CodeParams adapted = adapt_after_loss(cfg.params);
    t.header = {"lost_mode", "phase_re", "phase_im", "decoded_mode", "confidence",
                "adapted_eigenphase_error"};
    for (long j = 1; j <= cfg.params.n; ++j) {
        const CollectiveState ideal = make_ideal_codeword(cfg.params, 0, cfg.sigmaG);
        const CollectiveState lossy = apply_photon_loss(ideal, j);
        const LossSyndrome syn = decode_loss_phase(lossy, lc);
        const cplx eig = adapted_stabilizer_eigenvalue(lossy, adapted.t0);
        t.rows.push_back({j, syn.phase.real(), syn.phase.imag(), syn.decodedMode,
                          syn.confidence, std::abs(std::arg(eig))});
    }
}

void run_rotation_scan(const ExperimentConfig& cfg, ResultTable& t) {
    t.header = {"theta_rad",      "sigma_rad_per_s", "spacing_exact",
                "spacing_measured", "width_exact",   "width_measured",
                "width_additive", "freq_error",      "time_error",
                "verdict"};
    for (double theta : cfg.rotation.thetas) {
        for (double sigma : cfg.rotation.sigmas) {
            const RotationImperfection imp{theta, sigma};
            const EffectiveCombShape eff = rotated_effective_params(imp, cfg.params);
            const MeasuredCombShape meas =
                measure_rotated_marginal(imp, cfg.params, cfg.rotation.count);
            const auto rates = adapted_error_rates(imp, cfg.params);
            const RotationVerdict verdict = rotation_validity(imp, cfg.params);
            const std::string v = verdict == RotationVerdict::negligible ? "negligible"
                                  : verdict == RotationVerdict::adaptable ? "adaptable"
                                                                          : "broken";
            t.rows.push_back({theta, sigma, eff.spacing, meas.spacing, eff.exactWidth,
                              meas.width, eff.additiveWidth, rates.first, rates.second,
                              v});
        }
    }
}

void run_hom_scan(const ExperimentConfig& cfg, ResultTable& t) {
    const CollectiveState state = make_codeword(cfg.params, cfg.hom.k, cfg.sigmaG);
    const double tauMax = cfg.hom.tauMaxOverT0 * cfg.params.t0;
    t.header = {"tau_s", "coincidence_probability"};
    for (long i = 0; i < cfg.hom.points; ++i) {
        const double tau =
            tauMax * static_cast<double>(i) / static_cast<double>(cfg.hom.points - 1);
        t.rows.push_back({tau, hom_coincidence(state, tau)});
    }
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
    ResultTable t;
    t.metadata.emplace_back("version", "tfgkp 1.0.0");
    t.metadata.emplace_back("experiment", cfg.experiment);
    t.metadata.emplace_back("seed", std::to_string(cfg.seed));
    t.metadata.emplace_back("config_hash", hex64(fnv1a64(effective_dump(cfg))));

    try {
        if (cfg.experiment == "codeword")
            run_codeword(cfg, t);
        else if (cfg.experiment == "error-rate")
            run_error_rate(cfg, t);
        else if (cfg.experiment == "scaling-scan")
            run_scaling_scan(cfg, t);
        else if (cfg.experiment == "loss-demo")
            run_loss_demo(cfg, t);
        else if (cfg.experiment == "rotation-scan")
            run_rotation_scan(cfg, t);
        else if (cfg.experiment == "hom-scan")
            run_hom_scan(cfg, t);
        else
            throw DomainError("unknown experiment '" + cfg.experiment + "'");
    } catch (const DomainError& e) {
        throw DomainError(cfg.experiment + ": " + e.what());
    }

    for (const auto& row : t.rows)
        for (const auto& cell : row)
            if (const double* d = std::get_if<double>(&cell))
                if (!std::isfinite(*d))
                    throw NumericError(cfg.experiment + ": non-finite value in results");
    return t;
}

}  // namespace tfgkp::cli
