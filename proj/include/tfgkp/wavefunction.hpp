// wavefunction.hpp -- one-dimensional spectral amplitudes and displacement algebra
//
// Width convention, used everywhere a width parameter W appears: W names the
// Gaussian whose normalized density is (1/W) exp(-pi x^2 / W^2). Amplitude
// std = W / sqrt(pi), density std = W / sqrt(2 pi). Under this convention the
// asymptotic one-sided cell-crossing rate of a width-W peak equals
// (W / (pi L)) exp(-pi L^2 / (4 W^2)) for cell half-width L/2, with matching
// prefactor, which pins the convention against the closed-form error model.
//
// Displacement semantics: displace_1d(f, x0, s) maps f(x) to
// e^{i s (x - x0)} f(x - x0), i.e. modulate then shift. Internally a state is
// globalPhase * e^{i phaseSlope x} * base(x - shift). The frequency marginal
// translates by +x0; the conjugate-variable marginal (kernel e^{-i x t})
// translates by +s.
#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "tfgkp/common.hpp"
#include "tfgkp/params.hpp"

namespace tfgkp {

struct GridSpec {
    double xMin = 0.0;
    double xMax = 0.0;   // half-open domain [xMin, xMax)
    std::size_t count = 0;  // power of two, >= 2
};

struct Grid1D {
    double xMin = 0.0;
    double xMax = 0.0;
    std::vector<cplx> values;

    std::size_t count() const { return values.size(); }
    double step() const { return (xMax - xMin) / static_cast<double>(values.size()); }
    double x_at(std::size_t i) const { return xMin + step() * static_cast<double>(i); }

    // Quadrature L2 norm squared, step * sum |v|^2.
    double norm_sq() const;
};

// Gaussian comb: peaks at offset + s * spacing (plus tracked shift), peak
// amplitude std peakWidth, envelope amplitude std envWidth evaluated at the
// undisplaced centers. truncation bounds |s| so the neglected envelope mass
// stays below 1e-12.
struct AnalyticComb {
    double spacing = 0.0;
    double offset = 0.0;
    double peakWidth = 0.0;
    double envWidth = 0.0;   // infinity() for a flat envelope
    double shift = 0.0;
    double phaseSlope = 0.0;
    cplx globalPhase = 1.0;
    long truncation = 0;
    double normConst = 1.0;
};

// Single normalized Gaussian; width is the amplitude std directly.
struct PlainGaussian {
    double center = 0.0;
    double width = 1.0;
    double shift = 0.0;
    double phaseSlope = 0.0;
    cplx globalPhase = 1.0;
};

// Delta-peak lattice in the zero-width limit. Not normalizable; tracks only
// lattice geometry and accumulated shift/phase. Formally treated as unit norm.
struct IdealLattice {
    double spacing = 0.0;
    double offset = 0.0;
    double shift = 0.0;
    double phaseSlope = 0.0;
    cplx globalPhase = 1.0;
};

using ModeWavefunction = std::variant<AnalyticComb, PlainGaussian, IdealLattice, Grid1D>;

// Comb construction for logical index k in {0, 1}: spacing 2*omega0, peak
// centers (2s + k) * omega0, normalized, zero accumulated shift and slope.
AnalyticComb make_comb(const CodeParams& params, int k);

PlainGaussian make_plain_gaussian(double center, double width);

IdealLattice make_ideal_lattice(const CodeParams& params, int k);

// e^{i slope (x - x0)} f(x - x0); exact on analytic variants, FFT-based
// circular shift on sampled grids.
ModeWavefunction displace_1d(const ModeWavefunction& f, double x0, double slope);

// <a|b>. Closed form for Gaussian-sum pairs, quadrature for sampled pairs
// (domains must match), automatic sampling fallback for mixed pairs.
// Exact-lattice states pair only with each other.
cplx inner_product(const ModeWavefunction& a, const ModeWavefunction& b);

// Pointwise evaluation including tracked shift and phases.
cplx evaluate(const ModeWavefunction& f, double x);

// Evaluates f on the grid. Requires step <= peak amplitude std / 8 and
// truncated analytic tail mass outside the domain < 1e-9; violations raise
// DomainError naming the required minimum.
Grid1D sample_on_grid(const ModeWavefunction& f, const GridSpec& spec);

// f(-x) as a new wavefunction.
ModeWavefunction parity_flip(const ModeWavefunction& f);

// <f| e^{i beta x} |f>; modulus <= 1. For exact lattices: the lattice phase
// when beta * spacing is a multiple of 2 pi, else 0.
cplx modulation_expectation(const ModeWavefunction& f, double beta);

double tracked_shift(const ModeWavefunction& f);
double tracked_slope(const ModeWavefunction& f);

// Default sampling domain for a comb built from params: centered, wide enough
// that the neglected tail mass is far below the 1e-9 gate. count == 0 picks
// the smallest power of two satisfying the resolution rule (at least 2^14).
GridSpec default_grid(const CodeParams& params, double center = 0.0,
                      std::size_t count = 0);

}  // namespace tfgkp
