#include "tfgkp/logical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfgkp/decoder.hpp"

namespace tfgkp {

double code_omega0(const CollectiveState& state) {
    const ModeWavefunction& m1 = state.mode(1);
    if (const auto* c = std::get_if<AnalyticComb>(&m1)) return c->spacing / 2.0;
    if (const auto* l = std::get_if<IdealLattice>(&m1)) return l->spacing / 2.0;
    throw DomainError("mode 1 carries no code lattice");
}

CollectiveState apply_logical(const CollectiveState& state, const LogicalOp& op) {
    const double w0 = code_omega0(state);
    const double t0 = kPi / w0;
    const double rootN = std::sqrt(static_cast<double>(state.frame.n));
    switch (op.kind) {
        case LogicalOp::Kind::X:
            return apply_displacement(state, CollectiveDisplacement{w0, 0.0, 1});
        case LogicalOp::Kind::Z:
            return apply_displacement(state, CollectiveDisplacement{0.0, t0, 1});
        case LogicalOp::Kind::Y: {
            CollectiveState out = apply_logical(apply_logical(state, LogicalOp::x()),
                                                LogicalOp::z());
            out.globalPhase *= cplx(0.0, 1.0);
            return out;
        }
        case LogicalOp::Kind::Xj:
            return apply_displacement(state, LocalDisplacement{op.mode, rootN * w0, 0.0});
        case LogicalOp::Kind::Sx:
            return apply_displacement(state, CollectiveDisplacement{2.0 * w0, 0.0, 1});
        case LogicalOp::Kind::Sz:
            return apply_displacement(state, CollectiveDisplacement{0.0, 2.0 * t0, 1});
        case LogicalOp::Kind::Sj: {
            CollectiveState out = apply_displacement(
                state, LocalDisplacement{op.mode, 0.0, -2.0 * t0 * rootN});
            out.globalPhase *= std::polar(1.0, 2.0 * kPi * op.eta * rootN);
            return out;
        }
        case LogicalOp::Kind::Sglobal: {
            if (static_cast<long>(op.etas.size()) != state.frame.n)
                throw DomainError("eta vector length must equal the photon count");
            CollectiveState out = state;
            // Transverse slopes cancel exactly (columns k>1 of the frame sum
            // to zero), leaving the mode-1 slope alone.
            out.mode(1) = displace_1d(state.mode(1), 0.0,
                                      -static_cast<double>(state.frame.n) * t0);
            double etaSum = 0.0;
            for (long j = 1; j <= state.frame.n; ++j)
                if (j != state.lostPhoton) etaSum += op.etas[static_cast<std::size_t>(j - 1)];
            out.globalPhase *= std::polar(1.0, kPi * rootN * etaSum);
            return out;
        }
    }
    throw DomainError("unknown logical operator");
}

cplx stabilizer_expectation(const CollectiveState& state, const LogicalOp& op) {
    const cplx v = state_overlap(state, apply_logical(state, op));
    if (std::abs(v) > 1.0 + 1e-10)
        throw NumericError("expectation modulus " + std::to_string(std::abs(v)) +
                           " exceeds 1");
    return v;
}

ReadoutResult logical_readout(const CollectiveState& state, Rng& rng, long shots) {
    if (shots < 1) throw DomainError("shot count must be at least 1");
    const double w0 = code_omega0(state);
    ReadoutResult out;
    out.shots = shots;
    const MarginalSampler sampler = MarginalSampler::for_mode(state.mode(1));
    for (long s = 0; s < shots; ++s) {
        const double omega = sampler.draw(rng);
        const double ratio = omega / w0;
        double r = std::round(ratio);
        if (std::abs(ratio - std::floor(ratio) - 0.5) == 0.0) {
            // Half-integer tie: take the even neighbor.
            const double lo = std::floor(ratio);
            r = (static_cast<long long>(lo) % 2 == 0) ? lo : lo + 1.0;
        }
        if (static_cast<long long>(std::llabs(static_cast<long long>(r))) % 2 == 0)
            ++out.evenCount;
        else
            ++out.oddCount;
    }
    out.evenFrequency = static_cast<double>(out.evenCount) / static_cast<double>(shots);
    out.oddFrequency = static_cast<double>(out.oddCount) / static_cast<double>(shots);
    return out;
}

double hom_coincidence(const CollectiveState& state, double tau) {
    if (state.frame.n != 2)
        throw DomainError("coincidence observable requires exactly 2 photons");
    const ModeWavefunction& f = state.mode(1);
    const cplx overlap =
        inner_product(parity_flip(f), displace_1d(f, 0.0, -std::sqrt(2.0) * tau));
    const double p = 0.5 * (1.0 - overlap.real());
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw NumericError("coincidence probability " + std::to_string(p) +
                           " outside [0,1]");
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace tfgkp
