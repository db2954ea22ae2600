// frame.hpp -- orthogonal collective-variable frame and displacement mapping
#pragma once

#include <utility>
#include <vector>

#include "tfgkp/common.hpp"

namespace tfgkp {

// Normalized Hadamard frame, entries +-1/sqrt(n), column 1 all positive.
// entry(i, k): photon row i, collective-mode column k (0-based internally;
// public photon/mode indices are 1-based).
struct FrameMatrix {
    long n = 1;
    std::vector<double> entries;

    double entry(long photon, long mode) const {
        return entries[static_cast<std::size_t>(photon * n + mode)];
    }
};

struct LocalDisplacement {
    long mode = 1;      // photon index, 1-based
    double dOmega = 0.0;
    double dT = 0.0;
};

struct CollectiveDisplacement {
    double dOmega = 0.0;
    double dT = 0.0;
    long targetMode = 1;  // collective index, 1-based
};

// Sylvester-ordered Hadamard construction; n must be a power of two.
FrameMatrix build_alpha(long n);

// Per-collective-mode (shift, phaseSlope) pairs induced by a single-photon
// displacement: mode k receives (alpha_{j,k} dOmega, alpha_{j,k} dT).
std::vector<std::pair<double, double>> map_local_displacement(const FrameMatrix& frame,
                                                              const LocalDisplacement& d);

// Max-norm of alpha^T alpha - I, used by orthogonality checks.
double frame_orthogonality_defect(const FrameMatrix& frame);

}  // namespace tfgkp
