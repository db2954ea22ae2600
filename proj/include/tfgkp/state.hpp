// state.hpp -- separable collective-mode states and displacement application
#pragma once

#include <vector>

#include "tfgkp/frame.hpp"
#include "tfgkp/params.hpp"
#include "tfgkp/wavefunction.hpp"

namespace tfgkp {

// Product state over collective modes; mode index 1 carries the code comb.
// Joint reordering phases live in globalPhase; per-mode displacement phases
// stay inside each ModeWavefunction.
struct CollectiveState {
    FrameMatrix frame;
    std::vector<ModeWavefunction> modes;  // size n, 0-based storage for mode 1..n
    cplx globalPhase = 1.0;
    long photonsPresent = 0;
    long lostPhoton = 0;  // 1-based photon index, 0 when none lost

    const ModeWavefunction& mode(long k) const { return modes[static_cast<std::size_t>(k - 1)]; }
    ModeWavefunction& mode(long k) { return modes[static_cast<std::size_t>(k - 1)]; }
};

// Mode 1 = finite comb for logical index k, modes 2..n = PlainGaussian(0, sigmaG).
CollectiveState make_codeword(const CodeParams& params, int k, double sigmaG);

// Mode 1 = exact lattice (zero-width limit), modes 2..n = PlainGaussian(0, sigmaG).
CollectiveState make_ideal_codeword(const CodeParams& params, int k, double sigmaG);

CollectiveState apply_displacement(const CollectiveState& state, const LocalDisplacement& d);
CollectiveState apply_displacement(const CollectiveState& state, const CollectiveDisplacement& d);

// <a|b> including both global phases; per-mode product.
cplx state_overlap(const CollectiveState& a, const CollectiveState& b);

}  // namespace tfgkp
