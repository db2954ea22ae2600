#pragma once

#include <boost/rational.hpp>
#include <vector>

#include "tfgkp/common.hpp"
#include "tfgkp/params.hpp"
#include "tfgkp/state.hpp"

// Photon-loss channel, eta-vector design, lost-mode identification from
// stabilizer eigenphases, and post-loss parameter adaptation.
//
// Eta-vector constraints (exact rational arithmetic):
//   pairwise:   (eta_j + eta_{j+1}) sqrt(n) integer for each adjacent pair;
//               firing phases e^{-2i eta_j pi sqrt(n)} != 1.
//   singleShot: sum_j eta_j sqrt(n) integer; detection phases
//               e^{-i eta_j pi sqrt(n)} pairwise distinct and != 1
//               (min angular separation 1e-6 rad).
// For non-square n, sqrt(n) is irrational, so integer conditions force the
// corresponding rational sums to vanish exactly.
//
// Eigenphases are obtained from presence bookkeeping, never sampled: losing
// photon j divides the intact stabilizer eigenvalue by that photon's factor,
// leaving the relative phase e^{-i eta_j pi sqrt(n)} (single shot) or
// e^{-2i eta_j pi sqrt(n)} (pairwise) independent of any correctable
// displacement carried by the state.

namespace tfgkp {

enum class LossScheme { pairwise, singleShot };

struct LossConfig {
    long n = 0;
    LossScheme scheme = LossScheme::singleShot;
    std::vector<boost::rational<long>> etas;

    std::vector<double> eta_values() const;
};

struct LossSyndrome {
    cplx phase{1.0, 0.0};   // measured/intact eigenvalue ratio, unit modulus
    long decodedMode = 0;   // 0 = none
    double confidence = 0;  // angular gap between best and runner-up hypothesis
};

// Deterministic search: denominator grids q = 1, 2, 4, 8, 16, then all
// integers up to 256; numerators lexicographically smallest satisfying the
// scheme's constraints. Throws if the budget is exhausted.
LossConfig build_eta_config(long n, LossScheme scheme);

// Throws ValidationError listing every violated constraint.
void validate_loss_config(const LossConfig& config);

// Flat amplitude integration over the lost photon's frequency. The stored
// mode 1 becomes the reduced collective variable: lattice scaled by
// r = sqrt((n-1)/n), peak width sqrt((sigmaF r)^2 + (sigmaG/sqrt(n))^2).
// Errors: j out of range, repeated loss, n = 1.
CollectiveState apply_photon_loss(const CollectiveState& state, long j);

// Analytic eigenphase decode; phase within 1e-9 of 1 decodes as none.
LossSyndrome decode_loss_phase(const CollectiveState& state, const LossConfig& config);

// Single-shot phase matching against a config's candidate set; throws on a
// tie between two candidates (within 1e-9).
LossSyndrome match_loss_phase(cplx phase, const LossConfig& config);

// Parameters for the (n-1)-photon configuration: T_o' = n T_o/(n-1),
// Omega_o' = Omega_o (n-1)/n. Errors when params.n < 2.
CodeParams adapt_after_loss(const CodeParams& params);

// <exp(2i W t)> on a lossy state, where W sums the remaining photon
// frequencies with the original 1/sqrt(n) normalization. With
// t = n T_o/(n-1) the eigenphase vanishes on ideal post-loss states.
cplx adapted_stabilizer_eigenvalue(const CollectiveState& lossyState, double t);

}  // namespace tfgkp
