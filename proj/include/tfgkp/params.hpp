// params.hpp -- code parameter set shared by every layer
#pragma once

#include <string>
#include <vector>

namespace tfgkp {

// Frequencies are rad/s, times are seconds; everything downstream works in
// units where omega0 == 1 unless a caller says otherwise.
struct CodeParams {
    long n = 1;            // photon count, power of two
    double omega0 = 1.0;   // peak half-spacing, > 0
    double delta = 0.1;    // peak width, 0 < delta < omega0
    double kappa = 0.05;   // inverse envelope width, kappa * omega0 < 1
    double t0 = 0.0;       // derived, t0 * omega0 == pi exactly

    // Validates and derives t0; throws ValidationError listing every failure.
    static CodeParams make(long n, double omega0, double delta, double kappa);

    // Post-loss parameter sets live on a reduced photon count that need not
    // be a power of two; all other checks still apply.
    static CodeParams make_adapted(long n, double omega0, double delta, double kappa);

    // Non-fatal advisories (currently: kappa * omega0 above 0.5).
    std::vector<std::string> warnings() const;
};

}  // namespace tfgkp
