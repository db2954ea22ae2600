// fourier.hpp -- unitary continuous-convention transforms on uniform grids
#pragma once

#include <vector>

#include "tfgkp/common.hpp"
#include "tfgkp/wavefunction.hpp"

namespace tfgkp {

// Unnormalized DFT, kernel e^{sign * 2 pi i jk / N}. sign is +1 or -1.
std::vector<cplx> dft(const std::vector<cplx>& in, int sign);

// out(t_j) = (h / sqrt(2 pi)) * sum_m e^{sign * i x_m t_j} f(x_m), with the
// output grid centered on [-pi/h, pi/h). Unitary; exact round trip for
// centered input domains.
Grid1D spectral_transform(const Grid1D& g, int sign);

// Kernel e^{+i w t} / sqrt(2 pi).
Grid1D to_time_domain(const Grid1D& g);

// Inverse of to_time_domain (kernel e^{-i w t} / sqrt(2 pi)).
Grid1D from_time_domain(const Grid1D& g);

}  // namespace tfgkp
