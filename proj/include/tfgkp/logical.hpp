// logical.hpp -- logical operators, stabilizer expectations, readout, HOM
#pragma once

#include <vector>

#include "tfgkp/rng.hpp"
#include "tfgkp/state.hpp"

namespace tfgkp {

// Operator dictionary on the code lattice (omega0 = half peak spacing, read
// from mode 1):
//   X  = e^{-i omega0 T_hat}:    mode-1 shift +omega0
//   Z  = e^{-i Omega_hat t0}:    mode-1 phase slope -t0
//   Y  = i Z X (X first, then Z, then global factor i)
//   Xj = local frequency shift sqrt(n) omega0 on photon j
//   Sx = X^2, Sz = Z^2
//   Sj = e^{-2i (w_hat_j - n_hat_j eta_j omega0) t0 sqrt(n)}: local slope
//        -2 t0 sqrt(n) on photon j plus presence phase e^{+2 pi i eta_j sqrt(n)}
//   Sglobal = product over j of the square root of Sj (single-shot form):
//        mode-1 slope -n t0, presence phase e^{+i pi sqrt(n) sum eta_j}
struct LogicalOp {
    enum class Kind { X, Z, Y, Xj, Sx, Sz, Sj, Sglobal };
    Kind kind = Kind::X;
    long mode = 1;             // photon index for Xj / Sj
    double eta = 0.0;          // eta_j for Sj
    std::vector<double> etas;  // eta vector for Sglobal

    static LogicalOp x() { return {Kind::X, 1, 0.0, {}}; }
    static LogicalOp z() { return {Kind::Z, 1, 0.0, {}}; }
    static LogicalOp y() { return {Kind::Y, 1, 0.0, {}}; }
    static LogicalOp xj(long j) { return {Kind::Xj, j, 0.0, {}}; }
    static LogicalOp sx() { return {Kind::Sx, 1, 0.0, {}}; }
    static LogicalOp sz() { return {Kind::Sz, 1, 0.0, {}}; }
    static LogicalOp sj(long j, double etaJ) { return {Kind::Sj, j, etaJ, {}}; }
    static LogicalOp sglobal(std::vector<double> e) {
        return {Kind::Sglobal, 1, 0.0, std::move(e)};
    }
};

// Half peak spacing of the mode-1 lattice; requires a comb or exact-lattice
// carrier.
double code_omega0(const CollectiveState& state);

CollectiveState apply_logical(const CollectiveState& state, const LogicalOp& op);

// <state| op |state> via displaced-copy overlap; |result| <= 1 + 1e-10.
cplx stabilizer_expectation(const CollectiveState& state, const LogicalOp& op);

struct ReadoutResult {
    long shots = 0;
    long evenCount = 0;
    long oddCount = 0;
    double evenFrequency = 0.0;
    double oddFrequency = 0.0;
};

// Samples the mode-1 marginal, bins each draw to the nearest lattice integer
// r = round(Omega/omega0) (exact half-integer ties to the even side), and
// reports parity frequencies.
ReadoutResult logical_readout(const CollectiveState& state, Rng& rng, long shots);

// Two-photon coincidence probability after a balanced beamsplitter:
// P(tau) = (1 - Re int F*(-W) F(W) e^{-i sqrt(2) W tau} dW) / 2.
double hom_coincidence(const CollectiveState& state, double tau);

}  // namespace tfgkp
