#pragma once

#include <cstddef>
#include <utility>

#include "tfgkp/params.hpp"

// Imperfect preparation/measurement modeled as a rotation by theta mixing the
// carrier variable with an orthogonal collective mode of width sigma. Widths
// follow the carrier convention: a width W labels the profile
// (1/W) exp(-pi x^2 / W^2), so the density std is W/sqrt(2 pi).

namespace tfgkp {

struct RotationImperfection {
    double theta = 0.0;  // mixing angle, |theta| < pi/2
    double sigma = 0.0;  // orthogonal mode width, > 0

    void validate() const;
};

struct EffectiveCombShape {
    double spacing = 0.0;        // 2 Omega_o cos(theta)
    double exactWidth = 0.0;     // sqrt(Delta^2 cos^2 + sigma^2 sin^2)
    double additiveWidth = 0.0;  // Delta + sigma |sin(theta)|, upper bound
};

enum class RotationVerdict { negligible, adaptable, broken };

struct MeasuredCombShape {
    double spacing = 0.0;
    double width = 0.0;
};

EffectiveCombShape rotated_effective_params(const RotationImperfection& imp,
                                            const CodeParams& params);

// negligible: (1 - cos theta) <= (Delta/Omega_o)^2, the cumulated spacing
// change staying below one peak width across the envelope's ~1/(2 Omega_o
// kappa) retained peaks. adaptable: |tan theta| below both error thresholds
// min{pi sigma/(2 Omega_o), Omega_o/(2 sigma)}. Otherwise broken.
RotationVerdict rotation_validity(const RotationImperfection& imp,
                                  const CodeParams& params);

// (E(sigma tan/Omega_o), E(tan/(sigma T_o))) via the closed-form error rate,
// clamped below 1; theta = 0 gives (0, 0).
std::pair<double, double> adapted_error_rates(const RotationImperfection& imp,
                                              const CodeParams& params);

// Numeric marginal of the rotated separable density, integrated by quadrature
// and peak-fitted with a weighted log-parabola over the half-maximum window
// of the three central peaks. Spacing from the outer fitted centers, width
// reported in the carrier convention.
MeasuredCombShape measure_rotated_marginal(const RotationImperfection& imp,
                                           const CodeParams& params,
                                           std::size_t count = 4096);

}  // namespace tfgkp
