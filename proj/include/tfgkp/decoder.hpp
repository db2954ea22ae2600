// decoder.hpp -- noise channels, modular syndromes, decoding, error rates
#pragma once

#include <optional>
#include <vector>

#include "tfgkp/params.hpp"
#include "tfgkp/rng.hpp"
#include "tfgkp/state.hpp"

namespace tfgkp {

// (W/(pi L)) exp(-pi L^2 / (4 W^2)) with W = delta, L = omega0: asymptotic
// one-sided cell-crossing rate of a width-delta peak on the omega0 lattice.
double closed_form_error(double delta, double omega0);

struct NoiseModel {
    double perModeOmegaStd = 0.0;
    double perModeTimeStd = 0.0;
    std::vector<LocalDisplacement> fixedDisplacements;
    // Restricts stochastic draws to these photons (empty = all photons).
    std::vector<long> activeModes;

    bool stochastic() const { return perModeOmegaStd > 0.0 || perModeTimeStd > 0.0; }
};

// Draw order: photons ascending, frequency before time; inactive photons
// consume no randomness. Fixed displacements are returned verbatim.
std::vector<LocalDisplacement> sample_noise(const NoiseModel& model, long n, Rng& rng);

enum class SyndromeMode { exact, sampled };

struct Syndrome {
    double sOmega = 0.0;  // in (-omega0/2, omega0/2]
    double sTime = 0.0;   // in (-t0/2, t0/2]
    double omega0 = 0.0;  // lattice half-spacing captured at extraction
    // Unfolded true deviations (available when mode 1 tracks displacements).
    double trueDevOmega = 0.0;
    double trueDevTime = 0.0;
    bool hasGroundTruth = false;
};

enum class ResidualLogical { I, X, Z, Y };

struct CorrectionOutcome {
    double appliedOmega = 0.0;
    double appliedTime = 0.0;
    ResidualLogical residualLogical = ResidualLogical::I;
    double trueShiftOmega = 0.0;
    double trueShiftTime = 0.0;
    bool oracleValid = false;
};

struct DecodeResult {
    CollectiveState corrected;
    CorrectionOutcome outcome;
};

// Inverse-CDF sampler over a mode-1 marginal density. Table form uses
// piecewise-linear density interpolation; lattice form draws a uniform peak
// index in a +-32 window (parity-invariant); gaussian form is direct.
class MarginalSampler {
  public:
    static MarginalSampler for_mode(const ModeWavefunction& f);
    static MarginalSampler from_density_table(std::vector<double> x,
                                              std::vector<double> density);
    double draw(Rng& rng) const;

  private:
    enum class Kind { table, lattice, gaussian };
    Kind kind_ = Kind::table;
    std::vector<double> x_;
    std::vector<double> cdf_;     // cumulative segment masses, normalized
    std::vector<double> dens_;    // node densities
    double spacing_ = 0.0;        // lattice
    double origin_ = 0.0;         // lattice / gaussian mean
    double densityStd_ = 0.0;     // gaussian
};

// Two-stage time-marginal sampler for a comb: peak index m with Gaussian
// envelope weights, then Gaussian jitter around m*t0.
class TimePeakSampler {
  public:
    static TimePeakSampler for_comb(const AnalyticComb& comb);
    double draw(Rng& rng) const;  // returns m*t0 + jitter (no slope offset)

  private:
    std::vector<double> cum_;
    long mMax_ = 0;
    double t0_ = 0.0;
    double jitterStd_ = 0.0;
};

// exact: reads the tracked mode-1 shift and phase slope. sampled: one draw
// from the frequency marginal and one from the conjugate-time marginal,
// reduced to centered representatives. Grid-backed mode 1 always samples and
// needs omega0 supplied; exact-lattice mode 1 is deterministic in both modes.
Syndrome extract_syndrome(const CollectiveState& state, SyndromeMode mode,
                          Rng* rng = nullptr, double omega0 = 0.0);

// Applies collective corrections -sOmega (frequency) and -sTime (time);
// residual logical is X iff round((trueDevOmega - sOmega)/omega0) is odd,
// Z dual in time, Y both, valid when ground truth is available.
DecodeResult decode_and_correct(const CollectiveState& state, const Syndrome& syndrome);

struct RegionCheck {
    bool freqAxis = false;
    bool timeAxis = false;
    bool joint = false;
};

// |sum dOmega| < sqrt(n) omega0/2, |sum dT| < sqrt(n) t0/2, and the joint
// area predicate 4 |sum dOmega| |sum dT| < n pi.
RegionCheck correctable_region_check(const std::vector<LocalDisplacement>& displacements,
                                     long n, const CodeParams& params);

struct ErrorRateReport {
    long trials = 0;
    long xErrors = 0;
    long zErrors = 0;
    long yErrors = 0;
    double pLogical = 0.0;
    double ciLow = 0.0;   // Wilson 95%
    double ciHigh = 0.0;  // Wilson 95%
    std::uint64_t seed = 0;
    CodeParams params;
    double sigmaG = 0.0;
    NoiseModel model;
    SyndromeMode syndromeMode = SyndromeMode::exact;
};

std::pair<double, double> wilson_interval(long successes, long trials);

// Alternates k = trial % 2, derives one generator per trial from (seed,
// trial), folds tracked displacements with per-trial measurement draws, and
// tallies residuals. Identical seed gives an identical report.
ErrorRateReport monte_carlo_error_rate(const CodeParams& params, double sigmaG,
                                       const NoiseModel& model, long trials,
                                       std::uint64_t seed,
                                       SyndromeMode mode = SyndromeMode::exact);

}  // namespace tfgkp
